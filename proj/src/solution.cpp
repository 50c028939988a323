#include "levyheat/solution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "levyheat/csv.hpp"
#include "levyheat/errors.hpp"
#include "levyheat/heat_kernel.hpp"
#include "levyheat/kahan.hpp"
#include "levyheat/special.hpp"

namespace levyheat {

namespace {

void check_time(const JumpField& field, double t) {
  if (t > field.window().horizon)
    throw OutOfWindow("time " + format_double(t) + " exceeds the horizon " + format_double(field.window().horizon));
  if (!(t > 0.0)) throw DomainError("evaluation time must be positive");
}

// Number of jumps with tau <= t.
Eigen::Index jumps_until(const JumpField& field, double t) {
  const auto& times = field.times();
  return std::upper_bound(times.data(), times.data() + times.size(), t) - times.data();
}

}  // namespace

double far_field_mean(const NoiseSpec& noise, const SpaceTimeWindow& window, double t) {
  const double jump_mean = noise.jump_mean();
  if (jump_mean == 0.0 || !(t > 0.0)) return 0.0;
  const int d = window.dimension;
  const double radius = window.radius;
  const double outside = integrate([&](double s) { return s > 0.0 ? ball_mass_complement(s, radius, d) : 0.0; },
                                   0.0, t, 1e-10);
  return jump_mean * outside;
}

SolutionEvaluator::SolutionEvaluator(const JumpField& field, const NoiseSpec& noise, SolutionMode mode, bool correct)
    : field_(&field), noise_(&noise), mode_(mode), correct_far_field_(correct), weights_(field.sizes()) {}

SolutionEvaluator SolutionEvaluator::additive(const JumpField& field, const NoiseSpec& noise, bool correct_far_field) {
  return SolutionEvaluator(field, noise, SolutionMode::Additive, correct_far_field);
}

SolutionEvaluator SolutionEvaluator::multiplicative(const JumpField& field, const NoiseSpec& noise,
                                                    const SigmaSpec& sigma) {
  if (noise.drift() != 0.0)
    throw DriftUnsupported("multiplicative mode requires zero drift, got m0 = " + format_double(noise.drift()));
  SolutionEvaluator ev(field, noise, SolutionMode::Multiplicative, false);
  const Eigen::Index n = field.size();
  const int d = field.dimension();
  const auto& tau = field.times();
  const auto& eta = field.locations();
  const auto& zeta = field.sizes();
  ev.pre_jump_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    CompensatedSum<double> v;
    for (Eigen::Index j = 0; j < i && tau(j) < tau(i); ++j)
      v += heat_kernel_r2(tau(i) - tau(j), (eta.col(i) - eta.col(j)).squaredNorm(), d) * ev.weights_(j);
    ev.pre_jump_(i) = v.value();
    ev.weights_(i) = sigma(ev.pre_jump_(i)) * zeta(i);
  }
  return ev;
}

double SolutionEvaluator::operator()(double t) const {
  check_time(*field_, t);
  const Eigen::Index n = jumps_until(*field_, t);
  const int d = field_->dimension();
  const auto& tau = field_->times();
  const auto& r2 = field_->squared_norms();
  CompensatedSum<double> sum;
  for (Eigen::Index i = 0; i < n; ++i) sum += heat_kernel_r2(t - tau(i), r2(i), d) * weights_(i);
  if (mode_ == SolutionMode::Multiplicative) return sum.value();
  sum += noise_->drift() * t;
  if (correct_far_field_) sum += far_field_mean(*noise_, field_->window(), t);
  return sum.value();
}

double eval_additive_at(const JumpField& field, const NoiseSpec& noise, double t, bool correct_far_field) {
  return SolutionEvaluator::additive(field, noise, correct_far_field)(t);
}

double eval_multiplicative_at(const JumpField& field, const NoiseSpec& noise, const SigmaSpec& sigma, double t) {
  return SolutionEvaluator::multiplicative(field, noise, sigma)(t);
}

Decomposition decompose(const JumpField& field, const NoiseSpec& noise, double t, bool correct_far_field) {
  check_time(field, t);
  const Eigen::Index n = jumps_until(field, t);
  const int d = field.dimension();
  CompensatedSum<double> recent_close;
  CompensatedSum<double> rest;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double term = heat_kernel_r2(t - field.times()(i), field.squared_norms()(i), d) * field.sizes()(i);
    if (t - field.times()(i) < 1.0 && field.squared_norms()(i) <= 1.0)
      recent_close += term;
    else
      rest += term;
  }
  rest += noise.drift() * t;
  if (correct_far_field) rest += far_field_mean(noise, field.window(), t);
  return {recent_close.value(), rest.value()};
}

SignedParts additive_parts(const JumpField& field, double t) {
  check_time(field, t);
  const Eigen::Index n = jumps_until(field, t);
  CompensatedSum<double> pos;
  CompensatedSum<double> neg;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double term =
        heat_kernel_r2(t - field.times()(i), field.squared_norms()(i), field.dimension()) * field.sizes()(i);
    (field.sizes()(i) > 0.0 ? pos : neg) += term;
  }
  return {pos.value(), neg.value()};
}

namespace {

PathSample evaluate(const SolutionEvaluator& ev, std::vector<double> times, std::vector<char> refined) {
  PathSample path{{}, {}, {}, ev.noise(), ev.field().window(), ev.mode(), ev.field().seed()};
  path.values.reserve(times.size());
  for (double t : times) path.values.push_back(ev(t));
  path.times = std::move(times);
  path.refined = std::move(refined);
  return path;
}

}  // namespace

PathSample eval_path(const SolutionEvaluator& ev, double step, bool refine_peaks) {
  if (!(step > 0.0)) throw DomainError("grid step must be positive");
  const auto& field = ev.field();
  const double horizon = field.window().horizon;

  std::vector<std::pair<double, char>> grid;
  const auto steps = static_cast<long long>(std::floor(horizon / step * (1.0 + 1e-12)));
  // For step = 1/m, k/m is exact at integer times, so the grid contains them.
  const double per_unit = std::round(1.0 / step);
  const bool reciprocal = per_unit >= 1.0 && std::abs(1.0 / step - per_unit) < 1e-9 * per_unit;
  for (long long k = 1; k <= steps; ++k) {
    const double t = reciprocal ? static_cast<double>(k) / per_unit : static_cast<double>(k) * step;
    if (t <= horizon) grid.emplace_back(t, 0);
  }
  if (refine_peaks) {
    const int d = field.dimension();
    for (Eigen::Index i = 0; i < field.size(); ++i) {
      if (!(field.squared_norms()(i) > 0.0)) continue;
      const double t = field.times()(i) + field.squared_norms()(i) / (2.0 * d);
      if (t > 0.0 && t <= horizon) grid.emplace_back(t, 1);
    }
  }
  // Base points sort ahead of refinement points at equal times and win the dedup.
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             grid.end());

  std::vector<double> times;
  std::vector<char> refined;
  times.reserve(grid.size());
  refined.reserve(grid.size());
  for (const auto& [t, flag] : grid) {
    times.push_back(t);
    refined.push_back(flag);
  }
  return evaluate(ev, std::move(times), std::move(refined));
}

PathSample eval_at(const SolutionEvaluator& ev, std::span<const double> times) {
  std::vector<double> unique_times;
  for (double t : times) {
    if (!unique_times.empty() && t < unique_times.back()) throw DomainError("evaluation times must be nondecreasing");
    if (unique_times.empty() || t > unique_times.back()) unique_times.push_back(t);
  }
  std::vector<char> refined(unique_times.size(), 0);
  return evaluate(ev, std::move(unique_times), std::move(refined));
}

void write_csv_rows(std::ostream& out, const PathSample& path, bool averages) {
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    const double v = averages ? path.values[k] / path.times[k] : path.values[k];
    out << format_double(path.times[k]) << ',' << format_double(v) << ',' << (path.refined[k] ? '1' : '0') << '\n';
  }
}

void write_csv(std::ostream& out, const PathSample& path, bool averages) {
  out << "# mode: " << (path.mode == SolutionMode::Additive ? "additive" : "multiplicative") << '\n';
  out << "# seed: " << path.seed << '\n';
  out << "# window: T=" << format_double(path.window.horizon) << " R=" << format_double(path.window.radius)
      << " d=" << path.window.dimension << '\n';
  out << "# noise: mean=" << format_double(path.noise.mean()) << " drift=" << format_double(path.noise.drift())
      << '\n';
  if (averages) out << "# values divided by time\n";
  out << "time,value,refined\n";
  write_csv_rows(out, path, averages);
}

}  // namespace levyheat
