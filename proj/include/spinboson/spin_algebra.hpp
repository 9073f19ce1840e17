#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <bit>
#include <complex>
#include <cstdint>
#include <vector>

#include "spinboson/errors.hpp"

// Spin-1/2 layer: Pauli operators on N sites, the Zeeman operator
// T0 = sum_l beta . sigma^[l], and its product eigenbasis.  State index
// convention: basis vector j of C^{2^N} assigns spin state bit_l(j) to
// site l (bit 0 = least significant), with single-site states (1,0) = 0
// and (0,1) = 1.

namespace spinboson {

struct SpinConfig {
  Eigen::Vector3d beta;                     // constant external field
  std::vector<Eigen::Vector3d> positions;   // one per spin

  int count() const { return static_cast<int>(positions.size()); }
  double beta_norm() const { return beta.norm(); }
  Eigen::Vector3d beta_direction() const {
    const double b = beta.norm();
    if (!(b > 0.0))
      throw PreconditionError("spin config: beta must be nonzero");
    return beta / b;
  }
};

inline Eigen::Matrix2cd pauli_matrix(int axis) {
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (axis) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, -i, i, 0; break;
    case 2: s << 1, 0, 0, -1; break;
    default:
      throw PreconditionError("pauli: axis must be 0, 1, or 2");
  }
  return s;
}

// sigma_axis acting on one site of an N-site register.
inline Eigen::MatrixXcd pauli(int axis, int site, int n_spins) {
  if (n_spins < 1) throw PreconditionError("pauli: need at least one spin");
  if (site < 0 || site >= n_spins)
    throw PreconditionError("pauli: site index out of range");
  const Eigen::Matrix2cd s = pauli_matrix(axis);
  const int dim = 1 << n_spins;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const int from = (j >> site) & 1;
    for (int to = 0; to < 2; ++to) {
      const std::complex<double> v = s(to, from);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      const int i = (j & ~(1 << site)) | (to << site);
      op(i, j) += v;
    }
  }
  return op;
}

inline Eigen::MatrixXcd t0_operator(const SpinConfig& cfg) {
  const int n = cfg.count();
  if (n < 1) throw PreconditionError("t0: need at least one spin");
  const int dim = 1 << n;
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
  for (int site = 0; site < n; ++site)
    for (int axis = 0; axis < 3; ++axis)
      if (cfg.beta[axis] != 0.0) op += cfg.beta[axis] * pauli(axis, site, n);
  return op;
}

// Eigenbasis of T0.  The single-site operator beta . sigma has simple
// eigenvalues -|beta| (vector b0) and +|beta| (vector b1); products
// a_E = tensor(b1 on E, b0 elsewhere), indexed by the subset bitmask E,
// diagonalize T0 with eigenvalue (2|E| - N)|beta|.  Phases are fixed by
// rotating each single-site vector so its largest component is real and
// positive, keeping every derived quantity reproducible.
class SpinBasis {
 public:
  explicit SpinBasis(const SpinConfig& cfg)
      : n_(cfg.count()), beta_norm_(cfg.beta.norm()) {
    if (n_ < 1) throw PreconditionError("spin basis: need at least one spin");
    if (!(beta_norm_ > 0.0))
      throw PreconditionError("spin basis: beta must be nonzero");
    Eigen::Matrix2cd h;
    const std::complex<double> i(0.0, 1.0);
    h << cfg.beta[2], cfg.beta[0] - i * cfg.beta[1],
         cfg.beta[0] + i * cfg.beta[1], -cfg.beta[2];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(h);
    b0_ = fix_phase(solver.eigenvectors().col(0));
    b1_ = fix_phase(solver.eigenvectors().col(1));
  }

  int n_spins() const { return n_; }
  int dim() const { return 1 << n_; }
  double beta_norm() const { return beta_norm_; }
  const Eigen::Vector2cd& lower() const { return b0_; }  // eigenvalue -|beta|
  const Eigen::Vector2cd& upper() const { return b1_; }  // eigenvalue +|beta|

  // T0 a_E = zeeman(E) a_E.
  double zeeman(std::uint32_t subset) const {
    return (2.0 * std::popcount(subset) - n_) * beta_norm_;
  }

  // Coefficients of a_E in the computational basis.
  Eigen::VectorXcd product_state(std::uint32_t subset) const {
    Eigen::VectorXcd v(dim());
    for (int j = 0; j < dim(); ++j) {
      std::complex<double> c(1.0, 0.0);
      for (int site = 0; site < n_; ++site) {
        const Eigen::Vector2cd& b = (subset >> site) & 1 ? b1_ : b0_;
        c *= b[(j >> site) & 1];
      }
      v[j] = c;
    }
    return v;
  }

  // <b_to, sigma_axis b_from>, the single-site mixing coefficients.
  std::complex<double> pauli_coeff(int axis, int from, int to) const {
    const Eigen::Matrix2cd s = pauli_matrix(axis);
    const Eigen::Vector2cd& bf = from ? b1_ : b0_;
    const Eigen::Vector2cd& bt = to ? b1_ : b0_;
    return bt.dot(s * bf);  // Eigen dot conjugates the left argument
  }

  // sigma_axis^[site] expressed in the a_E basis: each column E couples to
  // E itself and to E with the site's bit flipped.
  Eigen::SparseMatrix<std::complex<double>> sigma_in_eigenbasis(
      int axis, int site) const {
    if (site < 0 || site >= n_)
      throw PreconditionError("spin basis: site index out of range");
    using T = Eigen::Triplet<std::complex<double>>;
    std::vector<T> trip;
    const int d = dim();
    trip.reserve(2 * d);
    for (int e = 0; e < d; ++e) {
      const int from = (e >> site) & 1;
      for (int to = 0; to < 2; ++to) {
        const std::complex<double> c = pauli_coeff(axis, from, to);
        if (c == std::complex<double>(0.0, 0.0)) continue;
        const int target = (e & ~(1 << site)) | (to << site);
        trip.emplace_back(target, e, c);
      }
    }
    Eigen::SparseMatrix<std::complex<double>> op(d, d);
    op.setFromTriplets(trip.begin(), trip.end());
    return op;
  }

 private:
  static Eigen::Vector2cd fix_phase(Eigen::Vector2cd v) {
    const int lead = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
    const std::complex<double> c = v[lead];
    if (std::abs(c) > 0.0) v *= std::conj(c) / std::abs(c);
    return v;
  }

  int n_;
  double beta_norm_;
  Eigen::Vector2cd b0_, b1_;
};

}  // namespace spinboson
