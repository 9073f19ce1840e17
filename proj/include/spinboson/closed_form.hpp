#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "spinboson/chi_profile.hpp"
#include "spinboson/errors.hpp"
#include "spinboson/momentum_grid.hpp"
#include "spinboson/quadrature.hpp"
#include "spinboson/spin_algebra.hpp"

// Closed-form interaction and field expressions of the continuum model.
// Every 3d momentum integral here factorizes into an exact angular part
// (the integrands are low-degree polynomials in khat times plane waves,
// whose sphere averages are spherical Bessel kernels) and a radial
// integral evaluated adaptively:
//
//   Int e^{i q.u} dOmega(u)        = 4 pi j0(q)
//   Int e^{i q.u} u dOmega(u)      = 4 pi i j1(q) qhat
//   Int e^{i q.u} u_a u_b dOmega   = 4pi/3 (j0 + j2) d_ab - 4 pi j2 qhat_a qhat_b
//
// Grid-sum variants replace the integral by the cubature of a MomentumGrid
// and are the exact classical fields of the discretized model.

namespace spinboson {

struct QuadratureControl {
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

namespace detail {

// Int chi(r)^2 r^pow j_n(r u) dr over the support of chi, with an absolute
// tolerance anchored to the u = 0 envelope so decayed tails still converge.
inline double radial_bessel_integral(const ChiProfile& chi, int pow,
                                     unsigned bessel_n, double u,
                                     const QuadratureControl& ctrl) {
  const double lo = chi.infrared_radius();
  const double hi = chi.support_radius();
  auto envelope = [&](double r) {
    const double c = chi(r);
    return c * c * std::pow(r, pow);
  };
  if (u == 0.0 && bessel_n > 0) return 0.0;
  if (u == 0.0) {  // j0(0) = 1: the kernel degenerates to the envelope
    const Integral out = integrate_adaptive(envelope, lo, hi, ctrl.rel_tol,
                                            0.0, ctrl.max_intervals);
    if (out.error > 2.0 * ctrl.rel_tol * std::max(std::abs(out.value), 1e-300))
      throw NumericError("radial quadrature did not converge at zero radius");
    return out.value;
  }
  // Coarse envelope integral anchors an absolute tolerance, so strongly
  // oscillatory kernels with near-zero cancellation still terminate.
  const Integral env =
      integrate_adaptive(envelope, lo, hi, 1e-6, 0.0, ctrl.max_intervals);
  auto kernel = [&](double r) {
    const double c = chi(r);
    return c * c * std::pow(r, pow) * std::sph_bessel(bessel_n, r * u);
  };
  const double abs_tol = 0.5 * ctrl.rel_tol * std::max(env.value, 1e-300);
  const Integral out = integrate_adaptive(kernel, lo, hi, ctrl.rel_tol,
                                          abs_tol, ctrl.max_intervals);
  if (out.error > 2.0 * std::max(abs_tol, ctrl.rel_tol * std::abs(out.value)))
    throw NumericError(
        "radial quadrature did not meet the requested tolerance (achieved " +
        std::to_string(out.error) + ")");
  return out.value;
}

inline double inv_8pi3() { return std::pow(2.0 * std::acos(-1.0), -3.0); }

}  // namespace detail

// Effective pair interaction F(x) between spins at separation x in external
// field direction n:
//   F(x) = (2pi)^-3 Int chi^2 cos(k.x) |k x n|^2 / |k|^2 d^3k
//        = (2pi)^-3 Int chi^2 r^2 [ 8pi/3 j0(r|x|)
//                                   + 4pi j2(r|x|) ((n.xhat)^2 - 1/3) ] dr.
inline double pair_interaction(const ChiProfile& chi, const Eigen::Vector3d& x,
                               const Eigen::Vector3d& beta_direction,
                               const QuadratureControl& ctrl = {}) {
  const double pi = std::acos(-1.0);
  const double u = x.norm();
  const double i0 = detail::radial_bessel_integral(chi, 2, 0, u, ctrl);
  double value = (8.0 * pi / 3.0) * i0;
  if (u > 0.0) {
    const double c = beta_direction.normalized().dot(x / u);
    const double i2 = detail::radial_bessel_integral(chi, 2, 2, u, ctrl);
    value += 4.0 * pi * i2 * (c * c - 1.0 / 3.0);
  }
  return detail::inv_8pi3() * value;
}

// Per-spin self energy constant: the single spin-flip channel sum
//   C = 1/2 (2pi)^-3 Int chi^2 |k| |khat x w|^2 / (|k| + 2|beta|) d^3k
// with w = <b1, sigma b0>.  The angular factor integrates to 16pi/3, so
//   C = (2pi)^-3 (8pi/3) Int chi^2 r^3 / (r + 2|beta|) dr,
// independent of the field direction.
inline double self_energy_constant(const ChiProfile& chi, double beta_norm,
                                   const QuadratureControl& ctrl = {}) {
  if (!(beta_norm > 0.0))
    throw PreconditionError("self_energy_constant: |beta| must be positive");
  const double pi = std::acos(-1.0);
  auto kernel = [&](double r) {
    const double c = chi(r);
    return c * c * r * r * r / (r + 2.0 * beta_norm);
  };
  const double lo = chi.infrared_radius();
  const double hi = chi.support_radius();
  const Integral out =
      integrate_adaptive(kernel, lo, hi, ctrl.rel_tol, 0.0, ctrl.max_intervals);
  if (out.error > 2.0 * ctrl.rel_tol * std::max(std::abs(out.value), 1e-300))
    throw NumericError("self-energy quadrature did not converge");
  return detail::inv_8pi3() * (8.0 * pi / 3.0) * out.value;
}

// Second energy coefficient of the continuum model:
//   lambda_2 = -N C - 1/2 sum_{l,m} F(x_l - x_m)
// with the double sum over ordered pairs including l = m.
inline double lambda2_closed(const ChiProfile& chi, const SpinConfig& spins,
                             const QuadratureControl& ctrl = {}) {
  const Eigen::Vector3d n = spins.beta_direction();
  const int count = spins.count();
  double sum_f = 0.0;
  for (int l = 0; l < count; ++l)
    for (int m = 0; m < count; ++m)
      sum_f += pair_interaction(chi, spins.positions[l] - spins.positions[m],
                                n, ctrl);
  return -count * self_energy_constant(chi, spins.beta_norm(), ctrl) -
         0.5 * sum_f;
}

// Radial charge profile rho(|x|) = (2pi)^-3 4pi Int chi^2 r^2 j0(r|x|) dr
// (the inverse Fourier transform of chi^2) and its radial derivative.
inline double charge_profile(const ChiProfile& chi, double radius,
                             const QuadratureControl& ctrl = {}) {
  if (radius < 0.0)
    throw PreconditionError("charge_profile: radius must be >= 0");
  const double pi = std::acos(-1.0);
  return detail::inv_8pi3() * 4.0 * pi *
         detail::radial_bessel_integral(chi, 2, 0, radius, ctrl);
}

inline double charge_profile_derivative(const ChiProfile& chi, double radius,
                                        const QuadratureControl& ctrl = {}) {
  if (radius < 0.0)
    throw PreconditionError("charge_profile: radius must be >= 0");
  const double pi = std::acos(-1.0);
  return -detail::inv_8pi3() * 4.0 * pi *
         detail::radial_bessel_integral(chi, 3, 1, radius, ctrl);
}

// Smeared density Phi(x) = sum_l rho(x - x_l).
inline double smeared_density(const ChiProfile& chi, const SpinConfig& spins,
                              const Eigen::Vector3d& x,
                              const QuadratureControl& ctrl = {}) {
  double total = 0.0;
  for (const auto& pos : spins.positions)
    total += charge_profile(chi, (x - pos).norm(), ctrl);
  return total;
}

// Classical current density j(x) = h n x grad Phi(x); orthogonal to the
// external field direction by construction.
inline Eigen::Vector3d current_density(const ChiProfile& chi,
                                       const SpinConfig& spins,
                                       const Eigen::Vector3d& x, double h,
                                       const QuadratureControl& ctrl = {}) {
  const Eigen::Vector3d n = spins.beta_direction();
  Eigen::Vector3d grad = Eigen::Vector3d::Zero();
  for (const auto& pos : spins.positions) {
    const Eigen::Vector3d y = x - pos;
    const double u = y.norm();
    if (u == 0.0) continue;
    grad += charge_profile_derivative(chi, u, ctrl) * (y / u);
  }
  return h * n.cross(grad);
}

// Classical vector potential
//   A(x) = h sum_l (2pi)^-3 4pi [ Int chi^2 r j1(r|y_l|) dr ] (n x yhat_l),
// oriented so that curl A recovers the magnetic field below.
inline Eigen::Vector3d vector_potential(const ChiProfile& chi,
                                        const SpinConfig& spins,
                                        const Eigen::Vector3d& x, double h,
                                        const QuadratureControl& ctrl = {}) {
  const double pi = std::acos(-1.0);
  const Eigen::Vector3d n = spins.beta_direction();
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (const auto& pos : spins.positions) {
    const Eigen::Vector3d y = x - pos;
    const double u = y.norm();
    if (u == 0.0) continue;
    const double i1 = detail::radial_bessel_integral(chi, 1, 1, u, ctrl);
    total += detail::inv_8pi3() * 4.0 * pi * i1 * (n.cross(y / u));
  }
  return h * total;
}

// Classical magnetic field
//   B(x) = h sum_l (2pi)^-3 [ (8pi/3 I0 - 4pi/3 I2) n + 4pi I2 (yhat.n) yhat ],
//   I_n  = Int chi^2 r^2 j_n(r|y_l|) dr,
// so that B(x).n per spin equals h F(x - x_l), and B(x_l) = h F(0) n for a
// single spin.
inline Eigen::Vector3d magnetic_field(const ChiProfile& chi,
                                      const SpinConfig& spins,
                                      const Eigen::Vector3d& x, double h,
                                      const QuadratureControl& ctrl = {}) {
  const double pi = std::acos(-1.0);
  const Eigen::Vector3d n = spins.beta_direction();
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (const auto& pos : spins.positions) {
    const Eigen::Vector3d y = x - pos;
    const double u = y.norm();
    const double i0 = detail::radial_bessel_integral(chi, 2, 0, u, ctrl);
    if (u == 0.0) {
      total += (8.0 * pi / 3.0) * i0 * n;
      continue;
    }
    const double i2 = detail::radial_bessel_integral(chi, 2, 2, u, ctrl);
    const Eigen::Vector3d yhat = y / u;
    total += (8.0 * pi / 3.0 * i0 - 4.0 * pi / 3.0 * i2) * n +
             4.0 * pi * i2 * yhat.dot(n) * yhat;
  }
  return h * detail::inv_8pi3() * total;
}

// Classical electric field of the ground state: identically zero.
inline Eigen::Vector3d electric_field(const Eigen::Vector3d& /*x*/,
                                      double /*h*/) {
  return Eigen::Vector3d::Zero();
}

// Grid-sum magnetic field: the continuum integrand cubatured on the given
// grid.  This is the exact classical field of the discretized model; the
// one-photon cross term of the quantized field reproduces it to rounding.
inline Eigen::Vector3d magnetic_field_grid(const MomentumGrid& grid,
                                           const ChiProfile& chi,
                                           const SpinConfig& spins,
                                           const Eigen::Vector3d& x, double h) {
  const Eigen::Vector3d n = spins.beta_direction();
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (const auto& pos : spins.positions) {
    const Eigen::Vector3d y = x - pos;
    for (int i = 0; i < grid.node_count(); ++i) {
      const Eigen::Vector3d& k = grid.node(i);
      const double r = k.norm();
      const double c = chi(r);
      if (c == 0.0) continue;
      const Eigen::Vector3d khat = k / r;
      total += grid.weight(i) * c * c * std::cos(k.dot(y)) *
               (n - khat * khat.dot(n));
    }
  }
  return h * detail::inv_8pi3() * total;
}

// Grid-sum second energy coefficient.  The one-photon intermediate states
// organize by the spin subset they excite: with b0/b1 the single-site
// eigenvectors and A_m(x_l) the discrete coupling amplitudes,
//   v_empty = 2^{-1/2} sum_{l,m} <b0, s_m b0> A_m(x_l)
//   v_l     = 2^{-1/2} sum_m    <b1, s_m b0> A_m(x_l)
//   lambda2 = - sum_q |v_empty[q]|^2 / w_q
//             - sum_l sum_q |v_l[q]|^2 / (w_q + 2 |beta|).
// Independent of the Fock machinery; agrees with the recursion to rounding.
inline double lambda2_grid(const MomentumGrid& grid, const ChiProfile& chi,
                           const SpinConfig& spins) {
  SpinBasis sb(spins);
  const int modes = grid.mode_count();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd v_empty = Eigen::VectorXcd::Zero(modes);
  std::vector<Eigen::VectorXcd> v_site(
      spins.count(), Eigen::VectorXcd::Zero(modes));
  for (int site = 0; site < spins.count(); ++site)
    for (int axis = 0; axis < 3; ++axis) {
      const Eigen::VectorXcd amps =
          coupling_amplitudes(grid, chi, spins.positions[site], axis);
      v_empty += inv_sqrt2 * sb.pauli_coeff(axis, 0, 0) * amps;
      v_site[site] += inv_sqrt2 * sb.pauli_coeff(axis, 0, 1) * amps;
    }
  double lambda2 = 0.0;
  for (int q = 0; q < modes; ++q) {
    const double w = grid.mode_frequency(q);
    lambda2 -= std::norm(v_empty[q]) / w;
    for (int site = 0; site < spins.count(); ++site)
      lambda2 -= std::norm(v_site[site][q]) / (w + 2.0 * spins.beta_norm());
  }
  return lambda2;
}

}  // namespace spinboson
