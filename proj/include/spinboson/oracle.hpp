#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "spinboson/errors.hpp"
#include "spinboson/hamiltonian.hpp"
#include "spinboson/perturbation.hpp"
#include "spinboson/quadrature.hpp"

// Brute-force ground-state oracle for the truncated model: a seeded,
// fully reorthogonalized Lanczos iteration with thick restarts, falling
// back to dense diagonalization for small dimensions.  Everything is
// deterministic for a fixed seed; the start vector is drawn from explicit
// integer-to-double conversion, not a distribution object, so results do
// not depend on the standard library's sampler.

namespace spinboson {

struct EigenOptions {
  double tol = 1e-11;          // residual tolerance relative to the spectral scale
  int dense_threshold = 2000;  // at or below: dense diagonalization
  int max_subspace = 180;      // Krylov length between restarts
  int keep_on_restart = 24;    // Ritz vectors retained at a restart
  int max_restarts = 60;
  std::uint64_t seed = 20250821;
  double degeneracy_tol = 1e-10;  // gap below scale*this flags degeneracy
};

struct GroundStateResult {
  double energy = 0.0;
  double gap = 0.0;  // distance to the second eigenvalue
  Eigen::VectorXcd state;
  int iterations = 0;  // matrix applications
  double residual = 0.0;
  bool degenerate_warning = false;
};

namespace detail {

// Deterministic standard-normal start vector (Box-Muller on raw bits).
inline Eigen::VectorXcd seeded_start(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
  };
  Eigen::VectorXcd v(dim);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = two_pi * uniform();
    v[i] = std::complex<double>(r * std::cos(t), r * std::sin(t));
  }
  v.normalize();
  return v;
}

}  // namespace detail

// Two lowest eigenpairs of a hermitian sparse matrix; the ground state is
// returned, the second eigenvalue only feeds the gap.
inline GroundStateResult ground_state(const SparseOp& matrix,
                                      const EigenOptions& opts = {}) {
  const Eigen::Index dim = matrix.rows();
  if (dim != matrix.cols())
    throw PreconditionError("ground_state: matrix must be square");
  if (dim < 2)
    throw PreconditionError("ground_state: dimension must be at least 2");
  GroundStateResult out;

  if (dim <= opts.dense_threshold) {
    Eigen::MatrixXcd dense(matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense);
    if (solver.info() != Eigen::Success)
      throw NumericError("ground_state: dense diagonalization failed");
    out.energy = solver.eigenvalues()[0];
    out.gap = solver.eigenvalues()[1] - solver.eigenvalues()[0];
    out.state = solver.eigenvectors().col(0);
    out.iterations = 0;
    out.residual = (matrix * out.state - out.energy * out.state).norm();
    const double scale =
        std::max(std::abs(solver.eigenvalues()[0]),
                 std::abs(solver.eigenvalues()[dim - 1]));
    out.degenerate_warning = out.gap <= opts.degeneracy_tol * std::max(1.0, scale);
    return out;
  }

  const int m_max = std::min<Eigen::Index>(opts.max_subspace, dim - 1);
  const int keep = std::min(opts.keep_on_restart, m_max / 2);
  Eigen::MatrixXcd basis(dim, m_max + 1);
  Eigen::MatrixXcd small = Eigen::MatrixXcd::Zero(m_max + 1, m_max + 1);
  basis.col(0) = detail::seeded_start(dim, opts.seed);

  int j_start = 0;
  int matvecs = 0;
  double scale = 1.0;
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    int width = 0;  // columns of the converged small problem
    bool breakdown = false;
    for (int j = j_start; j < m_max; ++j) {
      Eigen::VectorXcd w = matrix * basis.col(j);
      ++matvecs;
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) {
          const std::complex<double> c = basis.col(i).dot(w);
          w -= c * basis.col(i);
          small(i, j) += c;
        }
      const double next = w.norm();
      small(j + 1, j) = next;
      small(j, j + 1) = next;
      width = j + 1;
      if (next < 1e-14 * std::max(scale, 1.0)) {
        breakdown = true;  // exact invariant subspace
        break;
      }
      basis.col(j + 1) = w / next;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        small.topLeftCorner(width, width));
    if (solver.info() != Eigen::Success)
      throw NumericError("ground_state: projected eigensolve failed");
    const Eigen::VectorXd& theta = solver.eigenvalues();
    scale = std::max(std::abs(theta[0]), std::abs(theta[width - 1]));
    const double link = std::abs(small(width, width - 1));
    auto ritz_residual = [&](int i) {
      return link * std::abs(solver.eigenvectors()(width - 1, i));
    };
    const double tol_abs = opts.tol * std::max(scale, 1.0);
    const bool ground_ok = breakdown || ritz_residual(0) <= tol_abs;
    const bool second_ok =
        breakdown || width < 2 || ritz_residual(1) <= 100.0 * tol_abs;
    if ((ground_ok && second_ok) || restart == opts.max_restarts) {
      if (!ground_ok)
        throw NumericError(
            "ground_state: no convergence after " + std::to_string(matvecs) +
            " matrix applications (residual " +
            std::to_string(ritz_residual(0)) + ")");
      out.state = basis.leftCols(width) * solver.eigenvectors().col(0);
      out.state.normalize();
      const Eigen::VectorXcd hx = matrix * out.state;
      out.energy = out.state.dot(hx).real();
      out.residual = (hx - out.energy * out.state).norm();
      out.gap = width >= 2 ? theta[1] - out.energy : 0.0;
      out.iterations = matvecs;
      out.degenerate_warning =
          out.gap <= opts.degeneracy_tol * std::max(1.0, scale);
      return out;
    }

    // Thick restart: keep the lowest Ritz vectors plus the trailing
    // Lanczos vector; the projected matrix restarts in arrowhead form.
    Eigen::MatrixXcd kept =
        basis.leftCols(width) * solver.eigenvectors().leftCols(keep);
    Eigen::VectorXcd tail = basis.col(width);
    basis.leftCols(keep) = kept;
    basis.col(keep) = tail;
    small.setZero();
    for (int i = 0; i < keep; ++i) {
      small(i, i) = theta[i];
      const std::complex<double> b =
          link * std::conj(solver.eigenvectors()(width - 1, i));
      // row `keep` couples the kept Ritz vectors to the tail vector
      small(keep, i) = b;
      small(i, keep) = std::conj(b);
    }
    j_start = keep;
  }
  throw NumericError("ground_state: restart loop exited unexpectedly");
}

// Real expectation <op psi, psi>; complains if hermiticity is violated
// beyond rounding.
inline double expectation(const SparseOp& op, const Eigen::VectorXcd& state) {
  if (op.rows() != state.size())
    throw PreconditionError("expectation: dimension mismatch");
  const Eigen::VectorXcd applied = op * state;
  const std::complex<double> z = state.dot(applied);
  const double scale = std::max(applied.norm() * state.norm(), 1e-300);
  if (std::abs(z.imag()) > 1e-11 * scale)
    throw NumericError(
        "expectation: imaginary part " + std::to_string(z.imag()) +
        " exceeds the hermiticity tolerance at scale " + std::to_string(scale));
  return z.real();
}

// Rotate the global phase so that the coefficient on the reference
// coordinate (default: u_0) is real and nonnegative.
inline double align_phase(Eigen::VectorXcd& state, Eigen::Index coord = 0) {
  const std::complex<double> c = state[coord];
  const double mag = std::abs(c);
  if (mag > 0.0) state *= std::conj(c) / mag;
  return mag;
}

// One ground-state solve per h, deviations from the expansion's partial
// sums, overlap diagnostics, and optional observable gaps, with power-law
// fits of everything against h.
struct ObservableSpec {
  std::string name;
  SparseOp op;          // product-space hermitian observable
  double reference;     // the classical value it should approach
};

struct StudyRow {
  double h = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  int iterations = 0;
  double overlap_abs = 0.0;      // |<phi_h, u_0>|
  double overlap_rate = 0.0;     // ||phi_h - u_0|| / sqrt(h)
  double number_expectation = 0.0;
  std::vector<double> observable_gaps;
};

struct SeriesFit {
  std::string name;
  std::vector<double> deviations;  // one per h, ordering matches h_list
  PowerLawFit fit;
};

struct ConvergenceReport {
  std::vector<double> h_list;
  std::vector<StudyRow> rows;
  std::vector<SeriesFit> energy_series;  // index p-1: |E_h - sum_{j<=p}|
  SeriesFit overlap_series;              // ||phi_h - u_0||
  double overlap_rate_spread = 0.0;      // max/min of overlap_rate
  std::vector<SeriesFit> observable_series;
};

inline ConvergenceReport convergence_study(
    const ModelOperators& ops, const ExpansionResult& expansion,
    const std::vector<double>& h_list,
    const std::vector<ObservableSpec>& observables = {},
    const EigenOptions& opts = {}, int threads = 1) {
  if (h_list.empty())
    throw PreconditionError("convergence_study: h_list must not be empty");
  for (double h : h_list)
    if (!(h > 0.0) || h > 1.0)
      throw PreconditionError("convergence_study: h values must lie in (0, 1]");

  ConvergenceReport report;
  report.h_list = h_list;
  report.rows.resize(h_list.size());

  const int sdim = ops.spin_basis.dim();
  auto run_one = [&](std::size_t idx) {
    StudyRow row;
    row.h = h_list[idx];
    GroundStateResult gs = ground_state(hamiltonian_at(ops, row.h), opts);
    align_phase(gs.state);
    row.energy = gs.energy;
    row.gap = gs.gap;
    row.iterations = gs.iterations;
    row.overlap_abs = std::abs(gs.state[0]);
    Eigen::VectorXcd diff = gs.state;
    diff[0] -= 1.0;
    row.overlap_rate = diff.norm() / std::sqrt(row.h);
    double nexp = 0.0;
    for (Eigen::Index i = 0; i < gs.state.size(); ++i) {
      const double w = std::norm(gs.state[i]);
      if (w > 0.0) nexp += w * ops.basis.total(i / sdim);
    }
    row.number_expectation = nexp;
    row.observable_gaps.reserve(observables.size());
    for (const auto& spec : observables)
      row.observable_gaps.push_back(
          expectation(spec.op, gs.state) - spec.reference);
    return row;
  };

  if (threads > 1) {
    std::vector<std::future<StudyRow>> futures;
    futures.reserve(h_list.size());
    for (std::size_t i = 0; i < h_list.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_one, i));
    for (std::size_t i = 0; i < h_list.size(); ++i)
      report.rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < h_list.size(); ++i) report.rows[i] = run_one(i);
  }

  double energy_scale = 1.0;
  for (const auto& row : report.rows)
    energy_scale = std::max(energy_scale, std::abs(row.energy));
  const double floor = 1e-13 * energy_scale;

  for (std::size_t p = 1; p <= expansion.lambda.size(); ++p) {
    SeriesFit series;
    series.name = "energy_minus_partial_sum_p" + std::to_string(p);
    for (const auto& row : report.rows)
      series.deviations.push_back(
          row.energy - expansion.energy_partial_sum(row.h, static_cast<int>(p)));
    series.fit = fit_power_law(h_list, series.deviations, floor);
    report.energy_series.push_back(std::move(series));
  }

  report.overlap_series.name = "state_minus_u0";
  double rate_min = std::numeric_limits<double>::infinity(), rate_max = 0.0;
  for (const auto& row : report.rows) {
    report.overlap_series.deviations.push_back(row.overlap_rate *
                                               std::sqrt(row.h));
    rate_min = std::min(rate_min, row.overlap_rate);
    rate_max = std::max(rate_max, row.overlap_rate);
  }
  report.overlap_series.fit =
      fit_power_law(h_list, report.overlap_series.deviations, 0.0);
  report.overlap_rate_spread = rate_min > 0.0 ? rate_max / rate_min : 0.0;

  for (std::size_t o = 0; o < observables.size(); ++o) {
    SeriesFit series;
    series.name = observables[o].name;
    for (const auto& row : report.rows)
      series.deviations.push_back(row.observable_gaps[o]);
    series.fit = fit_power_law(h_list, series.deviations,
                               1e-14 * std::max(1.0, energy_scale));
    report.observable_series.push_back(std::move(series));
  }
  return report;
}

}  // namespace spinboson
