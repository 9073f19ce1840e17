#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "spinboson/chi_profile.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/quadrature.hpp"

// Discretization of photon momentum space.  A grid is a finite set of
// momentum nodes k_i with positive cubature weights w_i approximating
// integrals over R^3, plus a transverse polarization pair per node.  One
// field mode is a (node, polarization) pair; modes are indexed 2*i + s.

namespace spinboson {

// Orthonormal transverse pair for a nonzero momentum.  Away from the z-axis
//   eps1 = k x ez / |k x ez|,   eps2 = k x eps1 / |k|,
// and within angle ~1e-8 of the axis the pair degrades gracefully to
// (ex, ey).  Both vectors are orthogonal to k and to each other, and
// eps1 x eps2 = +-k/|k| (the minus sign occurs only at the south pole).
inline std::pair<Eigen::Vector3d, Eigen::Vector3d> polarization_pair(
    const Eigen::Vector3d& k) {
  const double norm = k.norm();
  if (!(norm > 0.0))
    throw PreconditionError("polarization_pair: momentum must be nonzero");
  const Eigen::Vector3d ez(0.0, 0.0, 1.0);
  Eigen::Vector3d cross = k.cross(ez);
  if (cross.norm() / norm < 1e-8)
    return {Eigen::Vector3d(1.0, 0.0, 0.0), Eigen::Vector3d(0.0, 1.0, 0.0)};
  Eigen::Vector3d eps1 = cross / cross.norm();
  Eigen::Vector3d eps2 = k.cross(eps1) / norm;
  return {eps1, eps2};
}

class MomentumGrid {
 public:
  // A grid may be built from any explicit node/weight set; polarization
  // pairs are derived per node, so transversality holds by construction.
  MomentumGrid(std::vector<Eigen::Vector3d> nodes, std::vector<double> weights)
      : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.empty())
      throw PreconditionError("momentum grid: need at least one node");
    if (nodes_.size() != weights_.size())
      throw PreconditionError("momentum grid: node/weight count mismatch");
    polarizations_.reserve(2 * nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!(weights_[i] > 0.0))
        throw PreconditionError("momentum grid: weights must be positive");
      auto [e1, e2] = polarization_pair(nodes_[i]);
      polarizations_.push_back(e1);
      polarizations_.push_back(e2);
    }
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int mode_count() const { return 2 * node_count(); }

  const Eigen::Vector3d& node(int i) const { return nodes_[i]; }
  double weight(int i) const { return weights_[i]; }
  const Eigen::Vector3d& polarization(int i, int s) const {
    return polarizations_[2 * i + s];
  }

  // Mode m = 2*i + s lives at node i with polarization s.
  int mode_node(int m) const { return m / 2; }
  int mode_pol(int m) const { return m % 2; }
  double mode_frequency(int m) const { return nodes_[m / 2].norm(); }

  double min_frequency() const {
    double lo = nodes_[0].norm();
    for (const auto& k : nodes_) lo = std::min(lo, k.norm());
    return lo;
  }

 private:
  std::vector<Eigen::Vector3d> nodes_;
  std::vector<double> weights_;
  std::vector<Eigen::Vector3d> polarizations_;
};

// Product cubature adapted to the support of chi: Gauss-Legendre of the
// given order radially on [infrared_radius, r_max], times one of the
// tabulated sphere rules.  Node weights absorb the r^2 Jacobian, so
// sum_i w_i f(k_i) ~ Int f(k) d^3k for integrands supported in the shell.
inline MomentumGrid build_grid(const ChiProfile& chi, int radial_order,
                               int angular_order, double r_max) {
  if (radial_order < 2)
    throw PreconditionError("build_grid: radial_order must be >= 2");
  const double rho = chi.infrared_radius();
  if (!(r_max > rho))
    throw PreconditionError(
        "build_grid: r_max must exceed the infrared radius of chi");
  const AngularRule ang = angular_rule(angular_order);  // validates the count
  const QuadRule rad = mapped(gauss_legendre(radial_order), rho, r_max);

  std::vector<Eigen::Vector3d> nodes;
  std::vector<double> weights;
  nodes.reserve(static_cast<std::size_t>(radial_order) * ang.directions.size());
  weights.reserve(nodes.capacity());
  for (int ir = 0; ir < radial_order; ++ir) {
    const double r = rad.nodes[ir];
    const double wr = rad.weights[ir] * r * r;
    for (std::size_t ia = 0; ia < ang.directions.size(); ++ia) {
      nodes.push_back(r * ang.directions[ia]);
      weights.push_back(wr * ang.weights[ia]);
    }
  }
  return MomentumGrid(std::move(nodes), std::move(weights));
}

// Discrete magnetic coupling amplitudes for a spin at position x and field
// component axis (0-based).  Mode 2*i + s carries
//   sqrt(w_i) * g(|k_i|) * (sin(k_i.x) + i cos(k_i.x)) * eps_s . (khat_i x e_axis)
// with g(r) = chi(r) sqrt(r) / (2 pi)^{3/2}.  The vector is the finite-mode
// stand-in for the coupling function k -> g sin/cos (k x e)/|k| of the
// continuum model; its squared norm approximates the corresponding L^2 norm.
inline Eigen::VectorXcd coupling_amplitudes(const MomentumGrid& grid,
                                            const ChiProfile& chi,
                                            const Eigen::Vector3d& x,
                                            int axis) {
  if (axis < 0 || axis > 2)
    throw PreconditionError("coupling_amplitudes: axis must be 0, 1, or 2");
  const double two_pi = 2.0 * std::acos(-1.0);
  const double norm_factor = std::pow(two_pi, -1.5);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[axis] = 1.0;
  Eigen::VectorXcd amps(grid.mode_count());
  for (int i = 0; i < grid.node_count(); ++i) {
    const Eigen::Vector3d& k = grid.node(i);
    const double r = k.norm();
    const double pref = std::sqrt(grid.weight(i)) * chi(r) * std::sqrt(r) * norm_factor;
    const double dot = k.dot(x);
    const std::complex<double> phase(std::sin(dot), std::cos(dot));
    const Eigen::Vector3d dir = k.cross(e) / r;
    for (int s = 0; s < 2; ++s)
      amps[2 * i + s] = pref * phase * grid.polarization(i, s).dot(dir);
  }
  return amps;
}

// Electric counterpart: the polarization factor is eps_s . e_axis, i.e. the
// transverse projection of the unit vector e_axis, with the same radial
// profile and the same sin + i cos phase as the magnetic amplitudes.  That
// phase alignment makes the electric one-photon cross terms odd under
// k -> -k, so the expectation of the electric field vanishes identically on
// inversion-symmetric grids, the discrete image of the continuum statement.
inline Eigen::VectorXcd electric_coupling_amplitudes(const MomentumGrid& grid,
                                                     const ChiProfile& chi,
                                                     const Eigen::Vector3d& x,
                                                     int axis) {
  if (axis < 0 || axis > 2)
    throw PreconditionError("coupling_amplitudes: axis must be 0, 1, or 2");
  const double two_pi = 2.0 * std::acos(-1.0);
  const double norm_factor = std::pow(two_pi, -1.5);
  Eigen::Vector3d e = Eigen::Vector3d::Zero();
  e[axis] = 1.0;
  Eigen::VectorXcd amps(grid.mode_count());
  for (int i = 0; i < grid.node_count(); ++i) {
    const Eigen::Vector3d& k = grid.node(i);
    const double r = k.norm();
    const double pref = std::sqrt(grid.weight(i)) * chi(r) * std::sqrt(r) * norm_factor;
    const double dot = k.dot(x);
    const std::complex<double> phase(std::sin(dot), std::cos(dot));
    for (int s = 0; s < 2; ++s)
      amps[2 * i + s] = pref * phase * grid.polarization(i, s).dot(e);
  }
  return amps;
}

}  // namespace spinboson
