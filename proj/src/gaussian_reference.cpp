#include "levyheat/gaussian_reference.hpp"

#include <Eigen/Cholesky>
#include <limits>
#include <random>
#include <vector>

#include "levyheat/parallel.hpp"
#include "levyheat/rng.hpp"

namespace levyheat {

namespace {
constexpr double kPivotTolerance = 1e-10;
constexpr double kJitter = 1e-12;
}  // namespace

GaussianGrid::GaussianGrid(Eigen::VectorXd times) : times_(std::move(times)) {
  const Eigen::Index n = times_.size();
  if (n == 0) throw DomainError("Gaussian grid needs at least one time");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(times_(i) > 0.0)) throw DomainError("Gaussian grid times must be positive");
    if (i > 0 && !(times_(i) > times_(i - 1))) throw DomainError("Gaussian grid times must be strictly increasing");
  }
  covariance_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) covariance_(i, j) = covariance_(j, i) = gaussian_covariance(times_(j), times_(i));
}

const Eigen::MatrixXd& GaussianGrid::factor() const {
  if (factor_) return *factor_;
  Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
  if (llt.info() != Eigen::Success) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(covariance_);
    if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() < -kPivotTolerance)
      throw FactorizationFailure("covariance is not positive semidefinite within tolerance");
    jitter_ = kJitter;
    const Eigen::Index n = covariance_.rows();
    llt.compute(covariance_ + jitter_ * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() != Eigen::Success) throw FactorizationFailure("Cholesky factorization failed after jitter");
  }
  factor_ = llt.matrixL();
  return *factor_;
}

double GaussianGrid::jitter() const {
  factor();
  return jitter_;
}

Eigen::MatrixXd sample_paths(const GaussianGrid& grid, int n_paths, std::uint64_t seed, int threads) {
  if (n_paths < 0) throw DomainError("path count must be nonnegative");
  const Eigen::MatrixXd& lower = grid.factor();
  const Eigen::Index n = grid.times().size();
  Eigen::MatrixXd normals(n, n_paths);
  parallel_for(static_cast<std::size_t>(n_paths), threads, [&](std::size_t k) {
    Rng rng(seed, k);
    std::normal_distribution<double> normal;
    for (Eigen::Index i = 0; i < n; ++i) normals(i, static_cast<Eigen::Index>(k)) = normal(rng);
  });
  return lower.triangularView<Eigen::Lower>() * normals;
}

double lil_normalizer(double t) {
  if (!(t > std::numbers::e)) throw DomainError("LIL normalizer needs t > e");
  return std::pow(2.0 * t / std::numbers::pi, 0.25) * std::sqrt(std::log(std::log(t)));
}

double lil_statistic(const Eigen::Ref<const Eigen::VectorXd>& path, const Eigen::Ref<const Eigen::VectorXd>& times) {
  if (path.size() != times.size()) throw DomainError("path and times differ in length");
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    if (!(times(i) > std::numbers::e)) continue;
    best = std::max(best, path(i) / lil_normalizer(times(i)));
    any = true;
  }
  if (!any) throw DomainError("LIL statistic needs grid times above e");
  return best;
}

Eigen::VectorXd log_spaced(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw DomainError("log_spaced needs 0 < lo < hi and n >= 2");
  Eigen::VectorXd out(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out(i) = lo * std::exp(step * i);
  out(n - 1) = hi;
  return out;
}

}  // namespace levyheat
