#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spinboson/errors.hpp"
#include "spinboson/momentum_grid.hpp"

// Truncated bosonic Fock space over K discrete modes: all occupation
// vectors n with n_1 + ... + n_K <= n_max, graded by total photon number.
// Within a sector states are enumerated in lexicographically descending
// order, so for K = 2, n_max = 2 the basis reads
//   (0,0) | (1,0), (0,1) | (2,0), (1,1), (0,2).

namespace spinboson {

using SparseOp = Eigen::SparseMatrix<std::complex<double>>;

class OccupationBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  // Number of states for given K and n_max: sum_m C(K+m-1, m) = C(K+n_max, n_max),
  // evaluated in floating point so oversized requests fail before allocation.
  static double estimate_size(int n_modes, int n_max) {
    double total = 1.0;
    for (int m = 1; m <= n_max; ++m)
      total = total * (n_modes + m) / m;  // running C(K+m, m)
    return total;
  }

  OccupationBasis(int n_modes, int n_max, std::size_t state_budget = 8000000)
      : n_modes_(n_modes), n_max_(n_max) {
    if (n_modes < 1)
      throw PreconditionError("occupation basis: need at least one mode");
    if (n_max < 0)
      throw PreconditionError("occupation basis: n_max must be >= 0");
    const double estimate = estimate_size(n_modes, n_max);
    if (estimate > static_cast<double>(state_budget)) {
      char digits[32];
      std::snprintf(digits, sizeof(digits), "%.0f", estimate);
      throw ResourceError("occupation basis: estimated dimension " +
                          std::string(digits) + " exceeds the state budget " +
                          std::to_string(state_budget));
    }
    std::vector<std::uint8_t> scratch(n_modes_, 0);
    sector_offsets_.push_back(0);
    for (int m = 0; m <= n_max_; ++m) {
      emit_sector(scratch, 0, m);
      sector_offsets_.push_back(size());
    }
    index_.reserve(size());
    for (std::size_t idx = 0; idx < size(); ++idx)
      index_.emplace(key(occupation(idx)), idx);
  }

  int n_modes() const { return n_modes_; }
  int n_max() const { return n_max_; }
  std::size_t size() const { return states_.size() / n_modes_; }

  std::span<const std::uint8_t> occupation(std::size_t idx) const {
    return {states_.data() + idx * n_modes_, static_cast<std::size_t>(n_modes_)};
  }

  int total(std::size_t idx) const {
    int t = 0;
    for (auto n : occupation(idx)) t += n;
    return t;
  }

  // Half-open index range of the m-photon sector.
  std::size_t sector_begin(int m) const { return sector_offsets_[m]; }
  std::size_t sector_end(int m) const { return sector_offsets_[m + 1]; }

  // Sector containing a state index.
  int sector_of(std::size_t idx) const {
    int m = 0;
    while (sector_offsets_[m + 1] <= idx) ++m;
    return m;
  }

  std::optional<std::size_t> index_of(std::span<const std::uint8_t> occ) const {
    auto it = index_.find(key(occ));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Index after n_mode -> n_mode + 1, or npos if that leaves the truncation.
  std::size_t raised(std::size_t idx, int mode) const {
    if (total(idx) + 1 > n_max_) return npos;
    std::string k = key(occupation(idx));
    k[mode] = static_cast<char>(k[mode] + 1);
    auto it = index_.find(k);
    return it == index_.end() ? npos : it->second;
  }

  // Index after n_mode -> n_mode - 1, or npos if the mode is empty.
  std::size_t lowered(std::size_t idx, int mode) const {
    auto occ = occupation(idx);
    if (occ[mode] == 0) return npos;
    std::string k = key(occ);
    k[mode] = static_cast<char>(k[mode] - 1);
    auto it = index_.find(k);
    return it == index_.end() ? npos : it->second;
  }

 private:
  void emit_sector(std::vector<std::uint8_t>& scratch, int mode, int remaining) {
    if (mode == n_modes_ - 1) {
      scratch[mode] = static_cast<std::uint8_t>(remaining);
      states_.insert(states_.end(), scratch.begin(), scratch.end());
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      scratch[mode] = static_cast<std::uint8_t>(n);
      emit_sector(scratch, mode + 1, remaining - n);
    }
  }

  static std::string key(std::span<const std::uint8_t> occ) {
    return std::string(reinterpret_cast<const char*>(occ.data()), occ.size());
  }

  int n_modes_;
  int n_max_;
  std::vector<std::uint8_t> states_;         // flat, n_modes_ per state
  std::vector<std::size_t> sector_offsets_;  // n_max_ + 2 entries
  std::unordered_map<std::string, std::size_t> index_;
};

// Photon number operator sum_i n_i (diagonal).
inline SparseOp number_operator(const OccupationBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  SparseOp op(dim, dim);
  op.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (Eigen::Index j = 0; j < dim; ++j)
    op.insert(j, j) = std::complex<double>(basis.total(j), 0.0);
  op.makeCompressed();
  return op;
}

// Second quantization of a diagonal one-photon multiplier: sum_i n_i omega_i.
inline SparseOp dgamma_operator(const OccupationBasis& basis,
                                const Eigen::VectorXd& frequencies) {
  if (frequencies.size() != basis.n_modes())
    throw PreconditionError("dgamma: frequency count must match mode count");
  const auto dim = static_cast<Eigen::Index>(basis.size());
  SparseOp op(dim, dim);
  op.reserve(Eigen::VectorXi::Constant(dim, 1));
  for (Eigen::Index j = 0; j < dim; ++j) {
    auto occ = basis.occupation(j);
    double e = 0.0;
    for (int q = 0; q < basis.n_modes(); ++q) e += occ[q] * frequencies[q];
    op.insert(j, j) = std::complex<double>(e, 0.0);
  }
  op.makeCompressed();
  return op;
}

// dGamma of multiplication by |k| on the given grid.
inline SparseOp dgamma_operator(const OccupationBasis& basis,
                                const MomentumGrid& grid) {
  if (grid.mode_count() != basis.n_modes())
    throw PreconditionError("dgamma: grid mode count must match the basis");
  Eigen::VectorXd freqs(grid.mode_count());
  for (int q = 0; q < grid.mode_count(); ++q) freqs[q] = grid.mode_frequency(q);
  return dgamma_operator(basis, freqs);
}

// Segal field Phi(f) = (a(f) + a*(f)) / sqrt(2) with a*(f) = sum_q f_q a*_q
// linear and a(f) = sum_q conj(f_q) a_q antilinear in f.  The truncated
// matrix drops creation out of the top sector, which keeps it hermitian.
// It connects photon sectors m <-> m +- 1 only, and Phi(f) applied to the
// vacuum is the one-photon state with coefficients f / sqrt(2).
inline SparseOp segal_field(const OccupationBasis& basis,
                            const Eigen::VectorXcd& f) {
  if (f.size() != basis.n_modes())
    throw PreconditionError("segal_field: mode vector size must match basis");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  using T = Eigen::Triplet<std::complex<double>>;
  std::vector<T> trip;
  const auto dim = static_cast<Eigen::Index>(basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    auto occ = basis.occupation(j);
    for (int q = 0; q < basis.n_modes(); ++q) {
      if (f[q] == std::complex<double>(0.0, 0.0)) continue;
      const std::size_t up = basis.raised(j, q);
      if (up != OccupationBasis::npos)
        trip.emplace_back(static_cast<Eigen::Index>(up),
                          static_cast<Eigen::Index>(j),
                          f[q] * (inv_sqrt2 * std::sqrt(occ[q] + 1.0)));
      if (occ[q] > 0) {
        const std::size_t down = basis.lowered(j, q);
        trip.emplace_back(static_cast<Eigen::Index>(down),
                          static_cast<Eigen::Index>(j),
                          std::conj(f[q]) * (inv_sqrt2 * std::sqrt(double(occ[q]))));
      }
    }
  }
  SparseOp op(dim, dim);
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

// Keep only the photon sectors of the given parity (0 = even, 1 = odd).
// The parity argument refers to total photon number mod 2.
inline Eigen::VectorXcd sector_project(const OccupationBasis& basis,
                                       const Eigen::VectorXcd& state,
                                       int parity) {
  if (parity != 0 && parity != 1)
    throw PreconditionError("sector_project: parity must be 0 or 1");
  if (state.size() % static_cast<Eigen::Index>(basis.size()) != 0)
    throw PreconditionError(
        "sector_project: state size must be a multiple of the basis size");
  const auto block = state.size() / static_cast<Eigen::Index>(basis.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.size());
  for (int m = parity; m <= basis.n_max(); m += 2) {
    const auto lo = static_cast<Eigen::Index>(basis.sector_begin(m)) * block;
    const auto hi = static_cast<Eigen::Index>(basis.sector_end(m)) * block;
    out.segment(lo, hi - lo) = state.segment(lo, hi - lo);
  }
  return out;
}

// A (x) identity on a spin factor of the given dimension, photon-major:
// product index = photon_index * spin_dim + spin_index.
inline SparseOp tensor_with_identity(const SparseOp& photon_op, int spin_dim) {
  if (spin_dim < 1)
    throw PreconditionError("tensor_with_identity: spin_dim must be >= 1");
  using T = Eigen::Triplet<std::complex<double>>;
  std::vector<T> trip;
  trip.reserve(static_cast<std::size_t>(photon_op.nonZeros()) * spin_dim);
  for (int col = 0; col < photon_op.outerSize(); ++col)
    for (SparseOp::InnerIterator it(photon_op, col); it; ++it)
      for (int s = 0; s < spin_dim; ++s)
        trip.emplace_back(it.row() * spin_dim + s, it.col() * spin_dim + s,
                          it.value());
  SparseOp op(photon_op.rows() * spin_dim, photon_op.cols() * spin_dim);
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

// Kronecker product, photon factor major as above.
inline SparseOp tensor_product(const SparseOp& photon_op, const SparseOp& spin_op) {
  using T = Eigen::Triplet<std::complex<double>>;
  std::vector<T> trip;
  trip.reserve(static_cast<std::size_t>(photon_op.nonZeros()) *
               static_cast<std::size_t>(spin_op.nonZeros()));
  const Eigen::Index sdim = spin_op.rows();
  for (int pc = 0; pc < photon_op.outerSize(); ++pc)
    for (SparseOp::InnerIterator pit(photon_op, pc); pit; ++pit)
      for (int sc = 0; sc < spin_op.outerSize(); ++sc)
        for (SparseOp::InnerIterator sit(spin_op, sc); sit; ++sit)
          trip.emplace_back(pit.row() * sdim + sit.row(),
                            pit.col() * sdim + sit.col(),
                            pit.value() * sit.value());
  SparseOp op(photon_op.rows() * sdim, photon_op.cols() * sdim);
  op.setFromTriplets(trip.begin(), trip.end());
  return op;
}

}  // namespace spinboson
