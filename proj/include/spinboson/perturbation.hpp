#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "spinboson/errors.hpp"
#include "spinboson/hamiltonian.hpp"

// Semiclassical ground-state expansion.  With H(h) = h K1 + h^{3/2} K32 the
// ansatz
//
//   E(h) ~ sum_{j>=1} lambda_j h^j,    psi(h) ~ sum_{j>=0} u_j h^{j/2},
//
// closes order by order: u_0 = vacuum (x) a_empty, lambda_1 = -N |beta|, and
// step j solves
//
//   (K1 - lambda1) u_j = -K32 u_{j-1} + sum_{i>=2} lambda_i u_{j-2i+2}
//
// on the orthogonal complement of u_0.  Even steps determine one new
// coefficient, lambda_{j/2+1} = -<f_j, u_0>, as the solvability condition.
// Photon parity alternates with j, every u_j with j >= 1 is orthogonal to
// u_0, and all lambda are real.  When chi does not vanish on a neighbourhood
// of zero frequency the continuum recursion stops being solvable past u_2,
// so the expansion order is capped at p = 1 in that regime and the vector
// list ends at u_2.

namespace spinboson {

struct ExpansionResult {
  int order = 0;      // requested p; lambda has p+1 entries when full
  int max_step = 0;   // largest computed u index
  bool capped = false;  // true when the infrared regime limited the order

  std::vector<double> lambda;            // lambda_1 .. (1-based order j = index+1)
  std::vector<Eigen::VectorXcd> u;       // u_0 .. u_{max_step}
  std::vector<double> relation_residual; // relative closure defect per step 1..max_step
  std::vector<double> lambda_imag_defect;  // |Im| of each solvability product

  // With S = max_step, T(h) = sum_j u_j h^{j/2} and L(h) = sum_j lambda_j h^j,
  // the leftover (H(h) - L(h)) T(h) obeys ||.|| <= remainder_constant * h^e
  // for h in (0, 1], where e = order + 2 for a full expansion and 5/2 for the
  // capped one.
  double remainder_constant = 0.0;
  double remainder_exponent = 0.0;

  double energy_partial_sum(double h, int p) const {
    double e = 0.0, hp = 1.0;
    for (int j = 1; j <= p; ++j) {
      hp *= h;
      e += lambda[j - 1] * hp;
    }
    return e;
  }
};

// Solve (K1 - lambda1) u = f - <f, u0> u0 with <u, u0> = 0.  In the product
// representation the shifted operator is the entrywise multiplier
// sum_i n_i |k_i| + 2 |beta| |E|, which is positive away from index 0; a
// vanishing denominator against a nonvanishing right-hand side means the
// resolvent is singular for this grid and is reported as a numeric error.
inline Eigen::VectorXcd solve_shifted(const ModelOperators& ops,
                                      const Eigen::VectorXcd& f) {
  if (f.size() != ops.dim())
    throw PreconditionError("solve_shifted: vector size mismatch");
  const double lambda1 = ops.lambda1();
  const double scale = std::max(1.0, std::abs(lambda1));
  const double denom_floor = 1e-12 * scale;
  const double rhs_floor = 1e-14 * f.norm();
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(f.size());
  for (Eigen::Index i = 1; i < f.size(); ++i) {
    const double denom = ops.k1_diag[i] - lambda1;
    if (denom <= denom_floor) {
      if (std::abs(f[i]) > rhs_floor)
        throw NumericError(
            "solve_shifted: singular resolvent at product index " +
            std::to_string(i) + " (shifted energy " + std::to_string(denom) +
            ")");
      continue;
    }
    u[i] = f[i] / denom;
  }
  return u;
}

namespace detail {

// Shared recursion: compute u_0 .. u_{max_step} and every lambda determined
// on the way.  Requires n_max >= max_step so that K32 u_{max_step - 1} is
// exact in the truncated space (creation out of the top sector never fires).
inline void run_recursion(const ModelOperators& ops, int max_step,
                          ExpansionResult* res) {
  if (ops.basis.n_max() < max_step)
    throw PreconditionError(
        "expansion: photon truncation n_max = " +
        std::to_string(ops.basis.n_max()) +
        " is too small; the recursion through step " +
        std::to_string(max_step) + " needs n_max >= " +
        std::to_string(max_step));
  const double lambda1 = ops.lambda1();
  res->max_step = max_step;
  res->lambda.assign(1, lambda1);
  res->u.assign(1, Eigen::VectorXcd::Zero(ops.dim()));
  res->u[0][0] = 1.0;

  for (int j = 1; j <= max_step; ++j) {
    Eigen::VectorXcd rhs = -(ops.k32 * res->u[j - 1]);
    for (int i = 2; j - 2 * i + 2 >= (j % 2 == 0 ? 2 : 1); ++i)
      rhs += res->lambda[i - 1] * res->u[j - 2 * i + 2];
    if (j % 2 == 0) {
      // Solvability along u_0 fixes the next energy coefficient.
      const std::complex<double> overlap = rhs[0];
      res->lambda.push_back(-overlap.real());
      res->lambda_imag_defect.push_back(std::abs(overlap.imag()));
    } else {
      res->lambda_imag_defect.push_back(std::abs(rhs[0]));
    }
    res->u.push_back(solve_shifted(ops, rhs));

    // Closure defect of the order-j relation, evaluated from scratch and
    // compared against the combined size of the relation's terms.
    Eigen::VectorXcd check =
        (ops.k1_diag.array() - lambda1).matrix().asDiagonal() * res->u[j];
    double scale = check.norm();
    const Eigen::VectorXcd coupling = ops.k32 * res->u[j - 1];
    scale += coupling.norm();
    check += coupling;
    for (std::size_t i = 2; i <= res->lambda.size(); ++i) {
      const int t = j - 2 * static_cast<int>(i) + 2;
      if (t < 0) continue;
      check -= res->lambda[i - 1] * res->u[t];
      scale += std::abs(res->lambda[i - 1]) * res->u[t].norm();
    }
    res->relation_residual.push_back(check.norm() / std::max(scale, 1e-300));
  }
}

}  // namespace detail

// Full expansion to order p: coefficients lambda_1 .. lambda_{p+1} and
// vectors u_0 .. u_{2p+1}.  Needs n_max >= 2p + 2 (the remainder bound
// applies K32 to u_{2p+1}).  In the infrared-open regime (chi not vanishing
// near zero frequency) the order is capped at p = 1, the expansion stops at
// u_2 (so n_max >= 2 suffices), and the leftover is O(h^{5/2}).
inline ExpansionResult expand(const ModelOperators& ops, int p) {
  if (p < 0) throw PreconditionError("expand: order must be >= 0");
  const bool capped = ops.infrared_open() && p >= 1;
  if (ops.infrared_open() && p > 1)
    throw PreconditionError(
        "expand: chi does not vanish near zero frequency; the expansion "
        "exists only through order p = 1 in this regime");
  const int needed = capped ? 2 : 2 * p + 2;
  if (ops.basis.n_max() < needed)
    throw PreconditionError(
        "expand: order p = " + std::to_string(p) + " needs n_max >= " +
        std::to_string(needed) + ", basis has n_max = " +
        std::to_string(ops.basis.n_max()));

  ExpansionResult res;
  res.order = p;
  res.capped = capped;
  const int max_step = capped ? 2 : 2 * p + 1;
  detail::run_recursion(ops, max_step, &res);

  // Leftover terms of (H - L) T: the one K32 application past the last
  // solved relation plus the lambda_i u_j products of total order > the
  // relation range.  For h <= 1 each carries at least the power below.
  double c = (ops.k32 * res.u[max_step]).norm();
  if (capped) {
    // Leftover terms: h^{5/2} (K32 u2 - lambda2 u1) and h^3 (-lambda2 u2).
    c += std::abs(res.lambda[1]) * (res.u[1].norm() + res.u[2].norm());
    res.remainder_exponent = 2.5;
  } else {
    for (std::size_t i = 2; i <= res.lambda.size(); ++i)
      for (int j = 2 * p + 4 - 2 * static_cast<int>(i); j <= max_step; ++j)
        if (j >= 0)
          c += std::abs(res.lambda[i - 1]) * res.u[j].norm();
    res.remainder_exponent = p + 2.0;
  }
  res.remainder_constant = c;
  return res;
}

// Recursion through u_{max_step} without the remainder machinery; cheaper
// preconditions (n_max >= max_step).  Step 2 already determines lambda_2,
// so this is the economical route to low-order coefficients on large grids.
inline ExpansionResult expand_through(const ModelOperators& ops, int max_step) {
  if (max_step < 0)
    throw PreconditionError("expand_through: step must be >= 0");
  if (ops.infrared_open() && max_step > 2)
    throw PreconditionError(
        "expand_through: chi does not vanish near zero frequency; vectors "
        "past u_2 do not exist in this regime");
  ExpansionResult res;
  res.order = std::max(0, (max_step - 1) / 2);
  res.capped = ops.infrared_open() && max_step >= 2;
  res.remainder_constant = std::numeric_limits<double>::quiet_NaN();
  res.remainder_exponent = std::numeric_limits<double>::quiet_NaN();
  detail::run_recursion(ops, max_step, &res);
  return res;
}

// || (H(h) - sum_j lambda_j h^j) sum_j u_j h^{j/2} ||, evaluated directly.
inline double residual_norm(const ModelOperators& ops,
                            const ExpansionResult& res, double h) {
  if (!(h > 0.0)) throw PreconditionError("residual_norm: h must be positive");
  Eigen::VectorXcd t = Eigen::VectorXcd::Zero(ops.dim());
  for (int j = 0; j <= res.max_step; ++j) t += std::pow(h, 0.5 * j) * res.u[j];
  double energy = 0.0;
  for (std::size_t j = 1; j <= res.lambda.size(); ++j)
    energy += res.lambda[j - 1] * std::pow(h, double(j));
  Eigen::VectorXcd w = apply_hamiltonian(ops, h, t) - energy * t;
  return w.norm();
}

}  // namespace spinboson
