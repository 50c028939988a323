#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>

#include "levyheat/noise_model.hpp"

namespace levyheat {

/// [0, T] x B(R) in R^d.
struct SpaceTimeWindow {
  double horizon = 1.0;
  double radius = 5.0;
  int dimension = 1;

  void validate() const;
  /// Lebesgue measure T * v_d * R^d.
  double volume() const;
};

struct JumpRecord {
  double time;
  Eigen::VectorXd location;
  double size;
};

/// Recent: t - tau <= 1. Close: |eta| <= 1. Small: |zeta| <= 1.
struct JumpClass {
  bool recent;
  bool close;
  bool small;
};

/*!
 * Sampled Poisson random measure on a space-time window, stored column-wise:
 * jump i has time times()(i), location locations().col(i) and size sizes()(i).
 * Jumps are sorted by time; ties keep insertion order.
 */
class JumpField {
 public:
  JumpField(SpaceTimeWindow window, Eigen::VectorXd times, Eigen::MatrixXd locations, Eigen::VectorXd sizes,
            std::uint64_t seed = 0);

  const SpaceTimeWindow& window() const noexcept { return window_; }
  std::uint64_t seed() const noexcept { return seed_; }
  Eigen::Index size() const noexcept { return times_.size(); }
  int dimension() const noexcept { return window_.dimension; }

  const Eigen::VectorXd& times() const noexcept { return times_; }
  const Eigen::MatrixXd& locations() const noexcept { return locations_; }
  const Eigen::VectorXd& sizes() const noexcept { return sizes_; }
  /// |eta_i|^2, cached.
  const Eigen::VectorXd& squared_norms() const noexcept { return squared_norms_; }

  JumpRecord record(Eigen::Index i) const { return {times_(i), locations_.col(i), sizes_(i)}; }

  /// Jumps with |eta| <= radius, on the window of that radius.
  JumpField restricted(double radius) const;

  /// Union of two fields on the same window.
  static JumpField merged(const JumpField& a, const JumpField& b);

 private:
  SpaceTimeWindow window_;
  Eigen::VectorXd times_;
  Eigen::MatrixXd locations_;
  Eigen::VectorXd sizes_;
  Eigen::VectorXd squared_norms_;
  std::uint64_t seed_;
};

/// Exact sample of the jumps of the noise inside `window`; deterministic in `seed`.
JumpField sample_field(const NoiseSpec& noise, const SpaceTimeWindow& window, std::uint64_t seed);

/// Uniform point in the centered ball of radius R in R^d.
Eigen::VectorXd sample_in_ball(Rng& rng, int d, double radius);

/// Throws FutureJump when the jump happens after t.
JumpClass classify_jump(const JumpRecord& jump, double t);

/// CSV with columns tau, eta_1..eta_d, zeta.
void write_csv(std::ostream& out, const JumpField& field);

}  // namespace levyheat
