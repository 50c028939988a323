#pragma once

#include <functional>

namespace levyheat {

/// Volume of the unit ball in R^d.
double ball_volume(int d);

/// Regularized lower incomplete gamma function P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x), computed
/// without cancellation.
double gamma_q(double a, double x);

/// Adaptive Gauss-Kronrod (7/15) integration of `f` over [a, b] to absolute
/// tolerance `abs_tol`.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-10,
                 int max_depth = 50);

}  // namespace levyheat
