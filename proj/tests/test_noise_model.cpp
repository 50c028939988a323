#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "levyheat/errors.hpp"
#include "levyheat/noise_model.hpp"
#include "levyheat/point_field.hpp"
#include "levyheat/special.hpp"

using namespace levyheat;

namespace {

double density(const PowerTail& t, double z) { return z >= t.z_min ? t.c * std::pow(z, -1.0 - t.alpha) : 0.0; }

// Integral of z^p c z^{-1-alpha} over (lower, upper] on [z_min, inf).
double quad_moment(const PowerTail& t, double p, double lower, double upper) {
  const double a = std::max(lower, t.z_min);
  auto f = [&](double z) { return std::pow(z, p) * density(t, z); };
  if (std::isinf(upper)) return boost::math::quadrature::exp_sinh<double>().integrate(f, a, kInfinity);
  if (upper <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, upper, 20, 1e-14);
}

}  // namespace

TEST_CASE("standard poisson noise has zero drift") {
  const auto noise = NoiseSpec::standard_poisson();
  CHECK(noise.mean() == 1.0);
  CHECK(noise.drift() == 0.0);
  CHECK(noise.measure().total_mass() == 1.0);
  CHECK(noise.jump_mean() == 1.0);
  CHECK(std::isinf(noise.measure().moment_excess()));
}

TEST_CASE("drift is the mean minus the jump mean") {
  const NoiseSpec noise(LevyMeasure::dirac({{2.0, 0.5}, {-1.0, 3.0}}), 4.0);
  CHECK(noise.jump_mean() == doctest::Approx(1.0 - 3.0));
  CHECK(noise.drift() == doctest::Approx(4.0 - (1.0 - 3.0)));
  CHECK(noise.measure().mass(JumpSign::Positive) == 0.5);
  CHECK(noise.measure().mass(JumpSign::Negative) == 3.0);
  const NoiseSpec mirror = noise.mirrored();
  CHECK(mirror.mean() == -4.0);
  CHECK(mirror.drift() == doctest::Approx(-noise.drift()));
  CHECK(mirror.measure().mass(JumpSign::Positive) == 3.0);
}

TEST_CASE("rounding-level drift is exactly zero") {
  const auto m = LevyMeasure::dirac({{1.0, 1.0}, {-1.5, 0.6}});
  CHECK(NoiseSpec(m, 0.1).drift() == 0.0);
  CHECK(NoiseSpec(m, 0.1 + 1e-9).drift() == doctest::Approx(1e-9));
}

TEST_CASE("invalid measures are rejected") {
  CHECK_THROWS_AS(LevyMeasure::power_tail({1.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(LevyMeasure::power_tail({1.0, 2.0, 0.5}), DomainError);
  CHECK_THROWS_AS(LevyMeasure::power_tail({-1.0, 2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(LevyMeasure::dirac({}), DomainError);
  CHECK_THROWS_AS(LevyMeasure::dirac({{1.0, -1.0}}), DomainError);
}

TEST_CASE("power tail mass and moments match quadrature") {
  const PowerTail tail{1.5, 1.8, 2.0};
  const auto m = LevyMeasure::power_tail(tail);
  CHECK(m.total_mass() == doctest::Approx(1.5 * std::pow(2.0, -1.8) / 1.8).epsilon(1e-14));
  CHECK(m.first_signed_moment() == doctest::Approx(quad_moment(tail, 1.0, 0.0, kInfinity)).epsilon(1e-10));
  CHECK(m.moment_excess() == doctest::Approx(0.8));
  for (double x : {0.5, 2.0, 3.7, 100.0})
    CHECK(tail_mass(m, x) == doctest::Approx(quad_moment(tail, 0.0, x, kInfinity)).epsilon(1e-10));
  CHECK(tail_mass(m, 1.0, JumpSign::Negative) == 0.0);
  for (double p : {0.25, 0.5, 1.0, 1.79, 1.8, 2.0, 3.0})
    for (auto [lo, hi] : {std::pair{0.0, 5.0}, std::pair{2.5, 40.0}, std::pair{1.0, 2.0}, std::pair{3.0, 3.0}})
      CHECK(partial_moment(m, p, lo, hi) == doctest::Approx(quad_moment(tail, p, lo, hi)).epsilon(1e-10));
  CHECK(partial_moment(m, 1.0, 0.0, kInfinity) == doctest::Approx(quad_moment(tail, 1.0, 0.0, kInfinity)));
  CHECK_THROWS_AS(partial_moment(m, 1.8, 0.0, kInfinity), InfiniteMoment);
  CHECK_THROWS_AS(absolute_moment(m, 2.0, JumpSign::Positive), InfiniteMoment);
  // p = alpha hits the logarithmic antiderivative
  CHECK(partial_moment(m, 1.8, 2.0, 10.0) == doctest::Approx(1.5 * std::log(5.0)).epsilon(1e-14));
  // additive over adjacent ranges
  for (double p : {0.5, 1.8, 2.5})
    CHECK(partial_moment(m, p, 0.0, 7.0) + partial_moment(m, p, 7.0, 30.0) ==
          doctest::Approx(partial_moment(m, p, 0.0, 30.0)).epsilon(1e-14));
}

TEST_CASE("atoms use strict tails and half-open moment ranges") {
  const auto m = LevyMeasure::dirac({{1.0, 2.0}, {3.0, 0.5}, {-2.0, 1.0}});
  CHECK(tail_mass(m, 1.0) == 0.5);
  CHECK(tail_mass(m, 0.99) == 2.5);
  CHECK(tail_mass(m, 1.5, JumpSign::Negative) == 1.0);
  CHECK(partial_moment(m, 1.0, 1.0, 3.0) == 1.5);
  CHECK(partial_moment(m, 1.0, 0.5, 1.0) == 2.0);
  CHECK(partial_moment(m, 2.0, 0.0, kInfinity, JumpSign::Negative) == 4.0);
}

TEST_CASE("power integral") {
  CHECK(power_integral(2.0, 5.0, -1.0) == doctest::Approx(std::log(2.5)).epsilon(1e-15));
  CHECK(power_integral(1.0, 2.0, 2.0) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(power_integral(1.0, kInfinity, -2.5) == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
  CHECK_THROWS_AS(power_integral(3.0, 2.0, 1.0), DomainError);
  CHECK(power_integral(1.0, 1.0 + 1e-12, -1.0 + 1e-14) == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("psi matches its integral definition") {
  const auto unit = LevyMeasure::dirac({{1.0, 1.0}});
  CHECK(psi(unit, 0.5, 1) == doctest::Approx(2.0));
  CHECK(psi(unit, 4.0, 1) == doctest::Approx(0.5));
  CHECK(psi(unit, 4.0, 3) == doctest::Approx(ball_volume(3) / 4.0));

  const PowerTail tail{1.0, 1.5, 1.0};
  const auto m = LevyMeasure::power_tail(tail);
  for (int d : {1, 2, 3})
    for (double r : {0.5, 1.0, 2.0, 17.0}) {
      const double expected = ball_volume(d) * (quad_moment(tail, 1.0, 0.0, r) / r + quad_moment(tail, 0.0, r, kInfinity));
      CHECK(psi(m, r, d) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("jump size sampling follows the normalized measure") {
  const PowerTail tail{2.0, 3.0, 1.5};
  const auto m = LevyMeasure::power_tail(tail);
  Rng rng(7);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = sample_jump_size(m, rng);
    REQUIRE(z >= 1.5);
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean - m.first_signed_moment() / m.total_mass()) < 4.0 * sd / std::sqrt(n));

  const auto mix = LevyMeasure::mixture({{1.0, 1.0}}, {{1.0, 2.0, 1.0, JumpSign::Negative}});
  int negatives = 0;
  for (int i = 0; i < n; ++i) {
    const double z = sample_jump_size(mix, rng);
    negatives += z < 0.0;
    REQUIRE((z == 1.0 || z <= -1.0));
  }
  const double share = mix.mass(JumpSign::Negative) / mix.total_mass();
  CHECK(std::abs(negatives / double(n) - share) < 4.0 * std::sqrt(share * (1 - share) / n));
  for (int i = 0; i < 1000; ++i) REQUIRE(sample_jump_size(mix, rng, JumpSign::Negative) <= -1.0);
}

TEST_CASE("tanh sigma is bounded, Lipschitz and centered") {
  const auto sigma = SigmaSpec::tanh_ramp(0.5, 2.0, 3.0);
  CHECK(sigma.lower() == 0.5);
  CHECK(sigma.upper() == 2.0);
  CHECK(sigma(0.0) == doctest::Approx(1.25));
  double worst = 0.0;
  for (double x = -20.0; x < 20.0; x += 0.001) {
    const double y = sigma(x);
    REQUIRE(y > 0.5);
    REQUIRE(y < 2.0);
    worst = std::max(worst, std::abs(sigma(x + 1e-6) - y) / 1e-6);
  }
  CHECK(worst <= 3.0 * (1 + 1e-5));
  CHECK(worst >= 3.0 * (1 - 1e-3));
  CHECK(sigma(1e6) < 2.0);
  CHECK(SigmaSpec::constant(1.7)(123.0) == 1.7);
  CHECK(SigmaSpec::constant(1.7).lipschitz() == 0.0);
  CHECK_THROWS_AS(SigmaSpec::tanh_ramp(2.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(SigmaSpec::constant(0.0), DomainError);
}

TEST_CASE("psi differences give the space-size volume of the level band") {
  const auto m = LevyMeasure::power_tail({1.0, 1.5, 1.0});
  Rng rng(31);
  for (int d : {1, 2}) {
    for (auto [r1, r2] : {std::pair{0.5, 3.0}, std::pair{2.0, 20.0}}) {
      const int n = 400000;
      const double scale = ball_volume(d) * m.total_mass();
      double hits = 0.0;
      for (int i = 0; i < n; ++i) {
        const double y = sample_in_ball(rng, d, 1.0).norm();
        const double ratio = sample_jump_size(m, rng) / std::pow(y, d);
        hits += ratio >= r1 && ratio <= r2;
      }
      const double share = hits / n;
      const double se = scale * std::sqrt(share * (1 - share) / n);
      CHECK(std::abs(scale * share - (psi(m, r1, d) - psi(m, r2, d))) < 3.0 * se);
    }
  }
}
