#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <numbers>

#include "levyheat/errors.hpp"

namespace levyheat {

/// Exponents |x|^2/(4t) above this give results below the smallest normal
/// double; the kernel is reported as exactly zero there.
template <typename Scalar>
inline const Scalar kKernelCutoff = -std::log(std::numeric_limits<Scalar>::min());

namespace detail {

template <typename Scalar>
Scalar inverse_gaussian_scale(Scalar t, int d) {
  const Scalar s = 4 * std::numbers::pi_v<Scalar> * t;
  switch (d) {
    case 1:
      return 1 / std::sqrt(s);
    case 2:
      return 1 / s;
    case 3:
      return 1 / (s * std::sqrt(s));
    default:
      return std::pow(s, -Scalar(0.5) * d);
  }
}

}  // namespace detail

/// Heat kernel (4 pi t)^{-d/2} exp(-r2 / (4t)) for squared distance r2;
/// zero for t <= 0.
template <typename Scalar>
Scalar heat_kernel_r2(Scalar t, Scalar r2, int d) {
  if (!(t > 0)) return Scalar(0);
  const Scalar exponent = r2 / (4 * t);
  if (exponent > kKernelCutoff<Scalar>) return Scalar(0);
  return detail::inverse_gaussian_scale(t, d) * std::exp(-exponent);
}

template <typename Derived>
typename Derived::Scalar heat_kernel(typename Derived::Scalar t, const Eigen::MatrixBase<Derived>& x) {
  return heat_kernel_r2(t, x.squaredNorm(), static_cast<int>(x.size()));
}

/// Time derivative of the kernel, e^{-|x|^2/4t} (pi |x|^2/t - 2 pi d) / (4 pi t)^{d/2+1}.
template <typename Scalar>
Scalar heat_kernel_dt_r2(Scalar t, Scalar r2, int d) {
  if (!(t > 0)) throw DomainError("kernel time derivative needs t > 0");
  const Scalar exponent = r2 / (4 * t);
  if (exponent > kKernelCutoff<Scalar>) return Scalar(0);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return std::exp(-exponent) * (pi * r2 / t - 2 * pi * d) * detail::inverse_gaussian_scale(t, d) /
         (4 * pi * t);
}

template <typename Derived>
typename Derived::Scalar heat_kernel_dt(typename Derived::Scalar t, const Eigen::MatrixBase<Derived>& x) {
  return heat_kernel_dt_r2(t, x.squaredNorm(), static_cast<int>(x.size()));
}

/// Time |x|^2/(2d) at which t -> g(t, x) is maximal.
template <typename Derived>
typename Derived::Scalar peak_time(const Eigen::MatrixBase<Derived>& x) {
  const auto r2 = x.squaredNorm();
  if (!(r2 > 0)) throw DegenerateLocation("peak time is undefined at the origin");
  return r2 / (2 * x.size());
}

/// Maximum (d / (2 pi e))^{d/2} |x|^{-d} of t -> g(t, x).
template <typename Derived>
typename Derived::Scalar peak_value(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar r = x.norm();
  if (!(r > 0)) throw DegenerateLocation("peak value is unbounded at the origin");
  const Scalar d = static_cast<Scalar>(x.size());
  return std::pow(d / (2 * std::numbers::pi_v<Scalar> * std::numbers::e_v<Scalar>), d / 2) * std::pow(r, -d);
}

/// Constants C in |d/dt g| <= C |x|^{-d-2} (when |x|^2 > 2dt) and
/// |d/dt g| <= C t^{-d/2-1} (otherwise).
struct KernelDerivativeBound {
  double far;
  double near;
};
KernelDerivativeBound kernel_derivative_bound(int d);

/// Integral of g(t, .) over the centered ball of radius R.
double ball_mass(double t, double radius, int d);
/// 1 - ball_mass, without cancellation.
double ball_mass_complement(double t, double radius, int d);

/// delta(eps) = ((1 - eps)^{-2/d} - 1) / (2d): for s/t <= delta, or for
/// |x| > 1 and s < delta, g(t + s, x) >= (1 - eps) g(t, x).
double kernel_delta(double eps, int d);

}  // namespace levyheat
