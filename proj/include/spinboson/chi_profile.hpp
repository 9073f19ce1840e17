#pragma once

#include <cmath>
#include <string>

#include "spinboson/errors.hpp"

namespace spinboson {

// Radial photon form factor chi(|k|).  Two families are supported:
//
//   annular bump         exp(-1 / (1 - t^2)),  t = (r - center) / width,
//                        supported on (center - width, center + width).
//                        With center > width the profile vanishes on a
//                        neighbourhood of zero frequency, which is the
//                        regime where the expansion runs to every order.
//
//   polynomial gaussian  r^power * exp(-r^2 / (2 scale^2)).
//                        chi(0) = 0 for power >= 1 but the support reaches
//                        down to zero frequency, which caps the expansion
//                        after the second energy coefficient.
//
// An overall amplitude multiplies either family; amplitude 0 decouples the
// field entirely and is handy in tests.
class ChiProfile {
 public:
  enum class Kind { annular_bump, polynomial_gaussian };

  static ChiProfile annular_bump(double center = 2.0, double width = 1.0,
                                 double amplitude = 1.0) {
    if (!(width > 0.0))
      throw PreconditionError("chi: bump width must be positive");
    if (!(center > 0.0))
      throw PreconditionError("chi: bump center must be positive");
    ChiProfile chi;
    chi.kind_ = Kind::annular_bump;
    chi.center_ = center;
    chi.width_ = width;
    chi.amplitude_ = amplitude;
    return chi;
  }

  static ChiProfile polynomial_gaussian(int power = 1, double scale = 1.0,
                                        double amplitude = 1.0) {
    if (power < 0)
      throw PreconditionError("chi: polynomial power must be >= 0");
    if (!(scale > 0.0))
      throw PreconditionError("chi: gaussian scale must be positive");
    ChiProfile chi;
    chi.kind_ = Kind::polynomial_gaussian;
    chi.power_ = power;
    chi.scale_ = scale;
    chi.amplitude_ = amplitude;
    return chi;
  }

  double operator()(double r) const {
    if (r < 0.0) return 0.0;
    if (kind_ == Kind::annular_bump) {
      const double t = (r - center_) / width_;
      if (std::abs(t) >= 1.0) return 0.0;
      return amplitude_ * std::exp(-1.0 / (1.0 - t * t));
    }
    return amplitude_ * std::pow(r, power_) * std::exp(-r * r / (2.0 * scale_ * scale_));
  }

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double center() const { return center_; }
  double width() const { return width_; }
  int power() const { return power_; }
  double scale() const { return scale_; }

  // Largest rho with chi = 0 on [0, rho]: the infrared gap of the profile.
  double infrared_radius() const {
    if (kind_ == Kind::annular_bump) return std::max(center_ - width_, 0.0);
    return 0.0;
  }

  // Whether chi vanishes identically near zero frequency (not merely at 0).
  bool vanishes_near_zero() const { return infrared_radius() > 0.0; }

  // Radius beyond which chi is zero or negligible at double precision.
  double support_radius() const {
    if (kind_ == Kind::annular_bump) return center_ + width_;
    return scale_ * (7.0 + power_);
  }

  std::string describe() const {
    if (kind_ == Kind::annular_bump)
      return "annular_bump(center=" + std::to_string(center_) +
             ", width=" + std::to_string(width_) + ")";
    return "polynomial_gaussian(power=" + std::to_string(power_) +
           ", scale=" + std::to_string(scale_) + ")";
  }

 private:
  ChiProfile() = default;

  Kind kind_ = Kind::annular_bump;
  double center_ = 2.0;
  double width_ = 1.0;
  int power_ = 1;
  double scale_ = 1.0;
  double amplitude_ = 1.0;
};

}  // namespace spinboson
