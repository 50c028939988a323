#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>

#include "levyheat/errors.hpp"

namespace levyheat {

/// Var Y_0(t) = sqrt(t / (2 pi)) under Gaussian space-time white noise, d = 1.
template <typename Scalar>
Scalar gaussian_variance(Scalar t) {
  if (!(t > 0)) throw DomainError("variance needs t > 0");
  return std::sqrt(t / (2 * std::numbers::pi_v<Scalar>));
}

/// Corr(Y_0(t), Y_0(t + h)); depends on h/t only.
template <typename Scalar>
Scalar gaussian_correlation(Scalar t, Scalar h) {
  if (!(t > 0) || h < 0) throw DomainError("correlation needs t > 0 and h >= 0");
  const Scalar r = h / t;
  return (std::sqrt(2 + r) - std::sqrt(r)) / std::pow(4 * (1 + r), Scalar(0.25));
}

template <typename Scalar>
Scalar gaussian_covariance(Scalar s, Scalar t) {
  if (s > t) std::swap(s, t);
  return std::sqrt(gaussian_variance(s) * gaussian_variance(t)) * gaussian_correlation(s, t - s);
}

/// Covariance of Y_0 on a fixed grid of times, with its Cholesky factor
/// computed on first use (not thread-safe until then).
class GaussianGrid {
 public:
  explicit GaussianGrid(Eigen::VectorXd times);

  const Eigen::VectorXd& times() const noexcept { return times_; }
  const Eigen::MatrixXd& covariance() const noexcept { return covariance_; }
  /// Lower-triangular L with L L^T = covariance (plus jitter if needed).
  const Eigen::MatrixXd& factor() const;
  /// Diagonal jitter that was added to factorize, 0 if none.
  double jitter() const;

 private:
  Eigen::VectorXd times_;
  Eigen::MatrixXd covariance_;
  mutable std::optional<Eigen::MatrixXd> factor_;
  mutable double jitter_ = 0.0;
};

/// n_paths independent draws, one per column; column k uses random stream k.
Eigen::MatrixXd sample_paths(const GaussianGrid& grid, int n_paths, std::uint64_t seed, int threads = 1);

/// (2t/pi)^{1/4} sqrt(log log t), defined for t > e.
double lil_normalizer(double t);

/// Maximum of value / lil_normalizer over the grid times above e.
double lil_statistic(const Eigen::Ref<const Eigen::VectorXd>& path, const Eigen::Ref<const Eigen::VectorXd>& times);

/// n points spaced geometrically from lo to hi inclusive.
Eigen::VectorXd log_spaced(double lo, double hi, int n);

}  // namespace levyheat
