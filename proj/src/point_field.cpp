#include "levyheat/point_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <vector>

#include "levyheat/csv.hpp"
#include "levyheat/errors.hpp"
#include "levyheat/special.hpp"

namespace levyheat {

void SpaceTimeWindow::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("window horizon must be positive");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("window radius must be positive");
  if (dimension < 1) throw DomainError("window dimension must be positive");
}

double SpaceTimeWindow::volume() const { return horizon * ball_volume(dimension) * std::pow(radius, dimension); }

JumpField::JumpField(SpaceTimeWindow window, Eigen::VectorXd times, Eigen::MatrixXd locations,
                     Eigen::VectorXd sizes, std::uint64_t seed)
    : window_(window), seed_(seed) {
  window_.validate();
  const Eigen::Index n = times.size();
  if (sizes.size() != n || locations.cols() != n || (n > 0 && locations.rows() != window.dimension))
    throw DomainError("jump field arrays have inconsistent shapes");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return times(a) < times(b); });

  times_.resize(n);
  sizes_.resize(n);
  locations_.resize(window.dimension, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    times_(k) = times(src);
    sizes_(k) = sizes(src);
    locations_.col(k) = locations.col(src);
  }
  squared_norms_ = locations_.colwise().squaredNorm().transpose();
}

JumpField JumpField::restricted(double radius) const {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < size(); ++i)
    if (squared_norms_(i) <= radius * radius) keep.push_back(i);
  const auto n = static_cast<Eigen::Index>(keep.size());
  Eigen::VectorXd t(n), z(n);
  Eigen::MatrixXd x(dimension(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto i = keep[static_cast<std::size_t>(k)];
    t(k) = times_(i);
    z(k) = sizes_(i);
    x.col(k) = locations_.col(i);
  }
  SpaceTimeWindow w = window_;
  w.radius = radius;
  return JumpField(w, std::move(t), std::move(x), std::move(z), seed_);
}

JumpField JumpField::merged(const JumpField& a, const JumpField& b) {
  if (a.dimension() != b.dimension()) throw DomainError("cannot merge fields of different dimension");
  const Eigen::Index n = a.size() + b.size();
  Eigen::VectorXd t(n), z(n);
  Eigen::MatrixXd x(a.dimension(), n);
  t.head(a.size()) = a.times_;
  t.tail(b.size()) = b.times_;
  z.head(a.size()) = a.sizes_;
  z.tail(b.size()) = b.sizes_;
  x.leftCols(a.size()) = a.locations_;
  x.rightCols(b.size()) = b.locations_;
  SpaceTimeWindow w = a.window_;
  w.horizon = std::max(a.window_.horizon, b.window_.horizon);
  w.radius = std::max(a.window_.radius, b.window_.radius);
  return JumpField(w, std::move(t), std::move(x), std::move(z), a.seed_);
}

Eigen::VectorXd sample_in_ball(Rng& rng, int d, double radius) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd direction(d);
  double norm = 0.0;
  while (!(norm > 0.0)) {
    for (int k = 0; k < d; ++k) direction(k) = normal(rng);
    norm = direction.norm();
  }
  return direction * (radius * std::pow(rng.uniform(), 1.0 / d) / norm);
}

JumpField sample_field(const NoiseSpec& noise, const SpaceTimeWindow& window, std::uint64_t seed) {
  window.validate();
  Rng rng(seed);
  const double intensity = noise.measure().total_mass() * window.volume();
  std::poisson_distribution<long long> count_dist(intensity);
  const auto n = static_cast<Eigen::Index>(count_dist(rng));

  Eigen::VectorXd t(n), z(n);
  Eigen::MatrixXd x(window.dimension, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i) = window.horizon * rng.uniform();
    x.col(i) = sample_in_ball(rng, window.dimension, window.radius);
    z(i) = sample_jump_size(noise.measure(), rng);
  }
  return JumpField(window, std::move(t), std::move(x), std::move(z), seed);
}

JumpClass classify_jump(const JumpRecord& jump, double t) {
  if (jump.time > t) throw FutureJump("jump at time " + format_double(jump.time) + " lies after " + format_double(t));
  return {t - jump.time <= 1.0, jump.location.norm() <= 1.0, std::abs(jump.size) <= 1.0};
}

void write_csv(std::ostream& out, const JumpField& field) {
  out << "# seed: " << field.seed() << '\n';
  out << "# horizon: " << format_double(field.window().horizon) << '\n';
  out << "# radius: " << format_double(field.window().radius) << '\n';
  out << "tau";
  for (int k = 1; k <= field.dimension(); ++k) out << ",eta_" << k;
  out << ",zeta\n";
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    out << format_double(field.times()(i));
    for (int k = 0; k < field.dimension(); ++k) out << ',' << format_double(field.locations()(k, i));
    out << ',' << format_double(field.sizes()(i)) << '\n';
  }
}

}  // namespace levyheat
