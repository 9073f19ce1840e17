#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "spinboson/chi_profile.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/fock_space.hpp"
#include "spinboson/momentum_grid.hpp"
#include "spinboson/spin_algebra.hpp"

// Discretized model Hamiltonian
//
//   H(h) = h K1 + h^{3/2} K32,
//   K1   = dGamma(|k|) (x) 1  +  1 (x) T0,
//   K32  = sum_{l,m} Phi(A_m(x_l)) (x) sigma_m^[l],
//
// assembled on (occupation basis) (x) (T0 eigenbasis a_E), product index
// fock * 2^N + E.  In that representation K1 is a real diagonal, its lowest
// entry sits at index 0 (vacuum (x) a_empty) with value -N |beta|, and the
// shifted operator K1 - lambda1 is the entrywise multiplier
// sum_i n_i |k_i| + 2 |beta| |E|.

namespace spinboson {

struct ModelOperators {
  MomentumGrid grid;
  OccupationBasis basis;
  SpinConfig spins;
  SpinBasis spin_basis;
  ChiProfile chi;

  Eigen::VectorXd k1_diag;  // diagonal of K1 in the product representation
  SparseOp k32;

  Eigen::Index dim() const {
    return static_cast<Eigen::Index>(basis.size()) * spin_basis.dim();
  }
  double lambda1() const { return -spins.count() * spins.beta_norm(); }
  bool infrared_open() const { return !chi.vanishes_near_zero(); }
};

inline ModelOperators assemble(MomentumGrid grid, const ChiProfile& chi,
                               const SpinConfig& spins, OccupationBasis basis) {
  if (grid.mode_count() != basis.n_modes())
    throw PreconditionError(
        "assemble: basis mode count must match the grid mode count");
  SpinBasis spin_basis(spins);
  ModelOperators ops{std::move(grid), std::move(basis), spins,
                     std::move(spin_basis), chi,
                     Eigen::VectorXd(), SparseOp()};

  const int sdim = ops.spin_basis.dim();
  const auto fdim = static_cast<Eigen::Index>(ops.basis.size());
  ops.k1_diag.resize(fdim * sdim);
  for (Eigen::Index a = 0; a < fdim; ++a) {
    auto occ = ops.basis.occupation(a);
    double photon = 0.0;
    for (int q = 0; q < ops.basis.n_modes(); ++q)
      if (occ[q]) photon += occ[q] * ops.grid.mode_frequency(q);
    for (int e = 0; e < sdim; ++e)
      ops.k1_diag[a * sdim + e] =
          photon + ops.spin_basis.zeeman(static_cast<std::uint32_t>(e));
  }

  using T = Eigen::Triplet<std::complex<double>>;
  std::vector<T> trip;
  for (int site = 0; site < spins.count(); ++site) {
    const Eigen::Vector3d& x = spins.positions[site];
    for (int axis = 0; axis < 3; ++axis) {
      const Eigen::VectorXcd amps =
          coupling_amplitudes(ops.grid, chi, x, axis);
      if (amps.isZero(0.0)) continue;
      const SparseOp photon_op = segal_field(ops.basis, amps);
      const SparseOp spin_op = ops.spin_basis.sigma_in_eigenbasis(axis, site);
      for (int pc = 0; pc < photon_op.outerSize(); ++pc)
        for (SparseOp::InnerIterator pit(photon_op, pc); pit; ++pit)
          for (int sc = 0; sc < spin_op.outerSize(); ++sc)
            for (SparseOp::InnerIterator sit(spin_op, sc); sit; ++sit)
              trip.emplace_back(pit.row() * sdim + sit.row(),
                                pit.col() * sdim + sit.col(),
                                pit.value() * sit.value());
    }
  }
  ops.k32.resize(fdim * sdim, fdim * sdim);
  ops.k32.setFromTriplets(trip.begin(), trip.end());
  return ops;
}

inline ModelOperators assemble(const MomentumGrid& grid, const ChiProfile& chi,
                               const SpinConfig& spins, int n_max,
                               std::size_t state_budget = 8000000) {
  return assemble(grid, chi, spins,
                  OccupationBasis(grid.mode_count(), n_max, state_budget));
}

// K1 as an explicit sparse matrix (diagonal).
inline SparseOp k1_operator(const ModelOperators& ops) {
  const Eigen::Index dim = ops.dim();
  SparseOp op(dim, dim);
  op.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (Eigen::Index j = 0; j < dim; ++j)
    op.insert(j, j) = std::complex<double>(ops.k1_diag[j], 0.0);
  op.makeCompressed();
  return op;
}

// H(h) = h K1 + h^{3/2} K32 at a fixed semiclassical parameter.
inline SparseOp hamiltonian_at(const ModelOperators& ops, double h) {
  if (!(h > 0.0)) throw PreconditionError("hamiltonian_at: h must be positive");
  SparseOp out = k1_operator(ops) * h;
  out += ops.k32 * std::pow(h, 1.5);
  out.makeCompressed();
  return out;
}

// Matrix-free application of H(h), used where assembling per h would churn.
inline Eigen::VectorXcd apply_hamiltonian(const ModelOperators& ops, double h,
                                          const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = std::pow(h, 1.5) * (ops.k32 * v);
  out.array() += h * ops.k1_diag.array() * v.array();
  return out;
}

// Quantized magnetic field component at a point: sqrt(h) Phi(A_axis(x)) (x) 1,
// acting on the same product space as the model operators.
inline SparseOp magnetic_field_op(const MomentumGrid& grid,
                                  const ChiProfile& chi,
                                  const OccupationBasis& basis,
                                  const Eigen::Vector3d& x, int axis, double h,
                                  int spin_dim) {
  if (!(h >= 0.0))
    throw PreconditionError("magnetic_field_op: h must be nonnegative");
  const Eigen::VectorXcd amps = coupling_amplitudes(grid, chi, x, axis);
  SparseOp op = segal_field(basis, amps) * std::sqrt(h);
  return tensor_with_identity(op, spin_dim);
}

// Quantized electric field component, with the transverse-projection
// polarization factor and the phase convention of the magnetic amplitudes.
inline SparseOp electric_field_op(const MomentumGrid& grid,
                                  const ChiProfile& chi,
                                  const OccupationBasis& basis,
                                  const Eigen::Vector3d& x, int axis, double h,
                                  int spin_dim) {
  if (!(h >= 0.0))
    throw PreconditionError("electric_field_op: h must be nonnegative");
  const Eigen::VectorXcd amps = electric_coupling_amplitudes(grid, chi, x, axis);
  SparseOp op = segal_field(basis, amps) * std::sqrt(h);
  return tensor_with_identity(op, spin_dim);
}

}  // namespace spinboson
