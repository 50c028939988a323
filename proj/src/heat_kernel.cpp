#include "levyheat/heat_kernel.hpp"

#include "levyheat/special.hpp"

namespace levyheat {

KernelDerivativeBound kernel_derivative_bound(int d) {
  if (d < 1) throw DomainError("dimension must be positive");
  const double pi = std::numbers::pi;
  const double k = 0.5 * d + 2.0;
  // sup_{y > 0} y^k e^{-y} is attained at y = k.
  const double sup = std::pow(k, k) * std::exp(-k);
  return {4.0 * std::pow(pi, -0.5 * d) * sup, 2.0 * pi * d * std::pow(4.0 * pi, -0.5 * d - 1.0)};
}

double ball_mass(double t, double radius, int d) {
  if (!(t > 0.0) || !(radius > 0.0)) throw DomainError("ball_mass needs t > 0 and R > 0");
  return gamma_p(0.5 * d, radius * radius / (4.0 * t));
}

double ball_mass_complement(double t, double radius, int d) {
  if (!(t > 0.0) || !(radius > 0.0)) throw DomainError("ball_mass needs t > 0 and R > 0");
  return gamma_q(0.5 * d, radius * radius / (4.0 * t));
}

double kernel_delta(double eps, int d) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("kernel_delta needs 0 < eps < 1");
  if (d < 1) throw DomainError("dimension must be positive");
  return (std::pow(1.0 - eps, -2.0 / d) - 1.0) / (2.0 * d);
}

}  // namespace levyheat
