#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "spinboson/errors.hpp"

// Quadrature plumbing shared by the momentum grids and the closed-form
// field formulas: Gauss-Legendre line rules, an adaptive Gauss-Kronrod
// integrator, and octahedrally symmetric unit-sphere rules.

namespace spinboson {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule of order n on [-1, 1], nodes ascending.  Newton
// iteration on P_n with the standard Chebyshev initial guess; converges to
// machine precision in a handful of steps for any practical order.
inline QuadRule gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: order must be >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Recurrence for P_n(x) and P_n'(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;  // cos is decreasing, so mirror for ascending order
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

// Affine image of a rule on [a, b].
inline QuadRule mapped(const QuadRule& base, double a, double b) {
  QuadRule rule = base;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (auto& x : rule.nodes) x = mid + half * x;
  for (auto& w : rule.weights) w *= half;
  return rule;
}

struct Integral {
  double value = 0.0;
  double error = 0.0;  // achieved absolute error estimate
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
inline void gk15(const F& f, double a, double b, double* value, double* err) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 8; ++i) {
    double v;
    if (i == 7) {
      v = f(mid);
      fk += kGK15WeightsK[7] * v;
      fg += kGK15WeightsG[3] * v;
    } else {
      double v1 = f(mid - half * kGK15Nodes[i]);
      double v2 = f(mid + half * kGK15Nodes[i]);
      v = v1 + v2;
      fk += kGK15WeightsK[i] * v;
      if (i % 2 == 1) fg += kGK15WeightsG[i / 2] * v;
    }
  }
  *value = fk * half;
  // QUADPACK-style sharpened estimate of the Gauss/Kronrod discrepancy.
  double diff = std::abs(fk - fg) * std::abs(half);
  *err = diff;
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b].  Splits the
// worst segment until the summed error estimate meets
// max(abs_tol, rel_tol * |integral|) or the interval budget runs out.
template <class F>
inline Integral integrate_adaptive(const F& f, double a, double b,
                                   double rel_tol = 1e-10,
                                   double abs_tol = 0.0,
                                   int max_intervals = 4000) {
  Integral out;
  if (a == b) return out;
  std::priority_queue<detail::Segment> queue;
  detail::Segment s{a, b, 0.0, 0.0};
  detail::gk15(f, a, b, &s.value, &s.error);
  out.evaluations = 15;
  double total = s.value, err = s.error;
  queue.push(s);
  int used = 1;
  while (err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         used < max_intervals) {
    detail::Segment worst = queue.top();
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      queue.push(worst);  // interval at rounding limit, cannot split further
      break;
    }
    detail::Segment left{worst.a, mid, 0.0, 0.0};
    detail::Segment right{mid, worst.b, 0.0, 0.0};
    detail::gk15(f, left.a, left.b, &left.value, &left.error);
    detail::gk15(f, right.a, right.b, &right.value, &right.error);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++used;
  }
  out.value = total;
  out.error = err;
  return out;
}

// Unit-sphere rules with octahedral symmetry, tabulated for the four
// supported point counts.  Weights sum to 4*pi; the n-point rule integrates
// polynomials up to total degree {6: 3, 14: 5, 26: 7, 38: 9} exactly, which
// covers every angular factor appearing in the coupling integrands.
struct AngularRule {
  std::vector<Eigen::Vector3d> directions;
  std::vector<double> weights;
};

inline AngularRule angular_rule(int point_count) {
  AngularRule rule;
  const double four_pi = 4.0 * std::acos(-1.0);
  auto add_axes = [&](double w) {
    for (int axis = 0; axis < 3; ++axis)
      for (int sign : {+1, -1}) {
        Eigen::Vector3d d = Eigen::Vector3d::Zero();
        d[axis] = sign;
        rule.directions.push_back(d);
        rule.weights.push_back(w * four_pi);
      }
  };
  auto add_corners = [&](double w) {
    const double c = 1.0 / std::sqrt(3.0);
    for (int sx : {+1, -1})
      for (int sy : {+1, -1})
        for (int sz : {+1, -1}) {
          rule.directions.push_back(Eigen::Vector3d(sx * c, sy * c, sz * c));
          rule.weights.push_back(w * four_pi);
        }
  };
  auto add_edges = [&](double w) {
    const double c = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        for (int si : {+1, -1})
          for (int sj : {+1, -1}) {
            Eigen::Vector3d d = Eigen::Vector3d::Zero();
            d[i] = si * c;
            d[j] = sj * c;
            rule.directions.push_back(d);
            rule.weights.push_back(w * four_pi);
          }
  };
  // Points (p, q, 0) and permutations with all sign choices, p^2 + q^2 = 1.
  auto add_pq0 = [&](double p, double q, double w) {
    for (int zero = 0; zero < 3; ++zero) {
      int i = (zero + 1) % 3, j = (zero + 2) % 3;
      for (int swap = 0; swap < 2; ++swap)
        for (int si : {+1, -1})
          for (int sj : {+1, -1}) {
            Eigen::Vector3d d = Eigen::Vector3d::Zero();
            d[i] = si * (swap ? q : p);
            d[j] = sj * (swap ? p : q);
            rule.directions.push_back(d);
            rule.weights.push_back(w * four_pi);
          }
    }
  };
  switch (point_count) {
    case 6:
      add_axes(1.0 / 6.0);
      break;
    case 14:
      add_axes(1.0 / 15.0);
      add_corners(3.0 / 40.0);
      break;
    case 26:
      add_axes(1.0 / 21.0);
      add_edges(4.0 / 105.0);
      add_corners(9.0 / 280.0);
      break;
    case 38:
      add_axes(1.0 / 105.0);
      add_corners(9.0 / 280.0);
      add_pq0(0.4597008433809831, 0.8880738339771151, 1.0 / 35.0);
      break;
    default:
      throw ConfigError("angular_rule: supported point counts are 6, 14, 26, 38");
  }
  return rule;
}

// Least-squares slope of log|y| against log(x), skipping entries at or below
// the noise floor.  Used for empirical convergence-rate fits.
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points_used = 0;
  bool degenerate = true;  // fewer than two usable points
};

inline PowerLawFit fit_power_law(const std::vector<double>& x,
                                 const std::vector<double>& y,
                                 double noise_floor = 0.0) {
  PowerLawFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    double ay = std::abs(y[i]);
    if (!(x[i] > 0.0) || ay <= noise_floor) continue;
    double lx = std::log(x[i]), ly = std::log(ay);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  fit.points_used = n;
  if (n < 2) return fit;
  double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-30) return fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  fit.degenerate = false;
  return fit;
}

}  // namespace spinboson
