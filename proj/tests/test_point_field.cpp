#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <sstream>

#include "levyheat/errors.hpp"
#include "levyheat/point_field.hpp"
#include "levyheat/special.hpp"

using namespace levyheat;

TEST_CASE("window validation and volume") {
  CHECK(SpaceTimeWindow{10.0, 5.0, 1}.volume() == doctest::Approx(100.0));
  CHECK(SpaceTimeWindow{2.0, 1.0, 3}.volume() == doctest::Approx(2.0 * ball_volume(3)));
  CHECK_THROWS_AS(SpaceTimeWindow({0.0, 5.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(SpaceTimeWindow({1.0, -1.0, 1}).validate(), DomainError);
  CHECK_THROWS_AS(SpaceTimeWindow({1.0, 1.0, 0}).validate(), DomainError);
}

TEST_CASE("jump count has the product-measure mean") {
  const auto noise = NoiseSpec::standard_poisson();
  const SpaceTimeWindow window{10.0, 5.0, 1};
  const int fields = 10000;
  double sum = 0.0, sq = 0.0;
  for (int k = 0; k < fields; ++k) {
    const double n = static_cast<double>(sample_field(noise, window, child_seed(1, k)).size());
    sum += n;
    sq += n * n;
  }
  const double mean = sum / fields;
  const double var = sq / fields - mean * mean;
  CHECK(std::abs(mean - 100.0) < 3.0 * std::sqrt(100.0 / fields));
  CHECK(var == doctest::Approx(100.0).epsilon(0.06));
}

TEST_CASE("fields are deterministic, sorted and inside the window") {
  const NoiseSpec noise(LevyMeasure::mixture({{1.0, 0.7}}, {{1.0, 1.6, 1.0, JumpSign::Negative}}), 0.0);
  const SpaceTimeWindow window{7.0, 2.0, 2};
  const JumpField a = sample_field(noise, window, 77);
  const JumpField b = sample_field(noise, window, 77);
  REQUIRE(a.size() > 10);
  CHECK(a.times() == b.times());
  CHECK(a.locations() == b.locations());
  CHECK(a.sizes() == b.sizes());
  CHECK(a.seed() == 77);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    CHECK(a.times()(i) >= 0.0);
    CHECK(a.times()(i) <= 7.0);
    CHECK(a.locations().col(i).norm() <= 2.0);
    CHECK(a.squared_norms()(i) == doctest::Approx(a.locations().col(i).squaredNorm()));
    CHECK(a.sizes()(i) != 0.0);
    if (i > 0) CHECK(a.times()(i - 1) <= a.times()(i));
  }
  CHECK(sample_field(noise, window, 78).times() != a.times());
}

TEST_CASE("sorting is stable for tied times") {
  const SpaceTimeWindow window{5.0, 5.0, 1};
  Eigen::VectorXd times(4);
  times << 2.0, 1.0, 2.0, 1.0;
  Eigen::MatrixXd loc(1, 4);
  loc << 0.1, 0.2, 0.3, 0.4;
  Eigen::VectorXd sizes(4);
  sizes << 1, 2, 3, 4;
  const JumpField f(window, times, loc, sizes);
  CHECK(f.sizes()(0) == 2);
  CHECK(f.sizes()(1) == 4);
  CHECK(f.sizes()(2) == 1);
  CHECK(f.sizes()(3) == 3);
}

TEST_CASE("locations are uniform on the ball") {
  Rng rng(3);
  for (int d : {1, 2, 3}) {
    // |eta|^d / R^d is uniform on [0, 1] for uniform points in the ball.
    const int n = 100000, bins = 20;
    std::vector<double> count(bins, 0.0);
    std::vector<double> octant(1 << d, 0.0);
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd x = sample_in_ball(rng, d, 2.5);
      REQUIRE(x.norm() <= 2.5);
      const double u = std::pow(x.norm() / 2.5, d);
      count[std::min(bins - 1, static_cast<int>(u * bins))] += 1.0;
      int o = 0;
      for (int k = 0; k < d; ++k) o |= (x(k) > 0.0) << k;
      octant[o] += 1.0;
    }
    const double critical = boost::math::quantile(boost::math::chi_squared(bins - 1), 1.0 - 1e-3);
    double chi2 = 0.0;
    for (double c : count) chi2 += (c - double(n) / bins) * (c - double(n) / bins) / (double(n) / bins);
    CHECK(chi2 < critical);
    const double e = double(n) / octant.size();
    double chi2o = 0.0;
    for (double c : octant) chi2o += (c - e) * (c - e) / e;
    CHECK(chi2o < boost::math::quantile(boost::math::chi_squared(octant.size() - 1), 1.0 - 1e-3));
  }
}

TEST_CASE("counts on disjoint windows are uncorrelated") {
  const auto noise = NoiseSpec::standard_poisson();
  const SpaceTimeWindow w{3.0, 1.0, 1};
  const int n = 20000;
  double sx = 0, sy = 0, sxy = 0;
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(sample_field(noise, w, child_seed(10, k)).size());
    const double y = static_cast<double>(sample_field(noise, w, child_seed(11, k)).size());
    sx += x;
    sy += y;
    sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  // Var of the product estimator for independent Poisson(6) counts is about 36.
  CHECK(std::abs(cov) < 3.0 * 6.0 / std::sqrt(n));
}

TEST_CASE("large-jump counts obey the Poisson tail bound") {
  // Jumps of size >= 2 on a unit window: Poisson with parameter lambda-bar(2-) * 2.
  const NoiseSpec noise(LevyMeasure::power_tail({1.0, 1.5, 1.0}), 2.0);
  const SpaceTimeWindow w{1.0, 1.0, 1};
  const double rate = 2.0 * tail_mass(noise.measure(), 2.0);
  const int fields = 40000;
  std::vector<int> counts(fields);
  for (int k = 0; k < fields; ++k) {
    const JumpField f = sample_field(noise, w, child_seed(5, k));
    counts[k] = static_cast<int>((f.sizes().array() >= 2.0).count());
  }
  double factorial = 1.0;
  for (int n = 1; n <= 5; ++n) {
    factorial *= n;
    double share = 0.0;
    for (int c : counts) share += c >= n;
    share /= fields;
    CHECK(share <= std::pow(rate, n) / factorial + 3.0 * std::sqrt(share * (1 - share) / fields) + 1e-12);
  }
}

TEST_CASE("jump classification thresholds are inclusive") {
  JumpRecord a{9.5, Eigen::VectorXd::Constant(1, 0.5), 2.0};
  auto c = classify_jump(a, 10.0);
  CHECK(c.recent);
  CHECK(c.close);
  CHECK_FALSE(c.small);
  JumpRecord b{1.0, Eigen::VectorXd::Constant(1, 3.0), 0.5};
  c = classify_jump(b, 10.0);
  CHECK_FALSE(c.recent);
  CHECK_FALSE(c.close);
  CHECK(c.small);
  JumpRecord edge{9.0, Eigen::VectorXd::Constant(1, 1.0), -1.0};
  c = classify_jump(edge, 10.0);
  CHECK(c.recent);
  CHECK(c.close);
  CHECK(c.small);
  CHECK_THROWS_AS(classify_jump(a, 9.0), FutureJump);
}

TEST_CASE("restriction and merge") {
  const auto noise = NoiseSpec::standard_poisson();
  const JumpField big = sample_field(noise, {20.0, 5.0, 2}, 9);
  const JumpField small = big.restricted(2.0);
  CHECK(small.window().radius == 2.0);
  CHECK(small.size() == (big.squared_norms().array() <= 4.0).count());
  const JumpField other = sample_field(noise, {20.0, 5.0, 2}, 10);
  const JumpField both = JumpField::merged(big, other);
  CHECK(both.size() == big.size() + other.size());
  CHECK(std::is_sorted(both.times().data(), both.times().data() + both.size()));
  CHECK(both.sizes().sum() == doctest::Approx(big.sizes().sum() + other.sizes().sum()));
}

TEST_CASE("csv export") {
  Eigen::VectorXd times(2);
  times << 0.5, 0.25;
  Eigen::MatrixXd loc(2, 2);
  loc << 0.1, -0.2, 0.3, 0.4;
  Eigen::VectorXd sizes(2);
  sizes << 1.0, -2.5;
  const JumpField f({1.0, 1.0, 2}, times, loc, sizes, 4);
  std::ostringstream out;
  write_csv(out, f);
  const std::string text = out.str();
  CHECK(text.find("tau,eta_1,eta_2,zeta\n0.25,-0.2,0.4,-2.5\n0.5,0.1,0.3,1\n") != std::string::npos);
  CHECK(text.rfind("#", 0) == 0);
}
