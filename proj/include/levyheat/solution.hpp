#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "levyheat/noise_model.hpp"
#include "levyheat/point_field.hpp"

namespace levyheat {

enum class SolutionMode { Additive, Multiplicative };

/// Values of Y(t, 0) on a time grid for one realization.
struct PathSample {
  std::vector<double> times;
  std::vector<double> values;
  /// 1 when the time was inserted at a jump-induced local maximum.
  std::vector<char> refined;

  NoiseSpec noise;
  SpaceTimeWindow window;
  SolutionMode mode;
  std::uint64_t seed;
};

/// Expected contribution m_jump * int_0^t (1 - ball_mass(s, R)) ds of the
/// jumps outside B(R) up to time t.
double far_field_mean(const NoiseSpec& noise, const SpaceTimeWindow& window, double t);

/*!
 * Point evaluator of Y_0(t) = Y(t, 0) for a fixed jump field.
 *
 * Additive mode: m0 t + sum_{tau_i <= t} g(t - tau_i, eta_i) zeta_i, plus the
 * far-field mean when requested. Multiplicative mode replaces zeta_i by
 * sigma(V_i) zeta_i, where V_i is the solution at (tau_i, eta_i) just before
 * the jump; it requires zero drift and never adds a far-field term.
 *
 * Holds a reference to the field, which must outlive the evaluator.
 */
class SolutionEvaluator {
 public:
  static SolutionEvaluator additive(const JumpField& field, const NoiseSpec& noise, bool correct_far_field);
  static SolutionEvaluator multiplicative(const JumpField& field, const NoiseSpec& noise, const SigmaSpec& sigma);

  double operator()(double t) const;

  SolutionMode mode() const noexcept { return mode_; }
  bool corrects_far_field() const noexcept { return correct_far_field_; }
  const JumpField& field() const noexcept { return *field_; }
  const NoiseSpec& noise() const noexcept { return *noise_; }
  /// Effective weight of each jump: zeta_i, or sigma(V_i) zeta_i.
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  /// V_i for each jump (multiplicative mode only; empty otherwise).
  const Eigen::VectorXd& pre_jump_values() const noexcept { return pre_jump_; }

 private:
  SolutionEvaluator(const JumpField& field, const NoiseSpec& noise, SolutionMode mode, bool correct);

  const JumpField* field_;
  const NoiseSpec* noise_;
  SolutionMode mode_;
  bool correct_far_field_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd pre_jump_;
};

double eval_additive_at(const JumpField& field, const NoiseSpec& noise, double t, bool correct_far_field);

double eval_multiplicative_at(const JumpField& field, const NoiseSpec& noise, const SigmaSpec& sigma, double t);

/// Y1: recent close jumps (tau in (t-1, t], |eta| <= 1). Y2: everything else,
/// including drift and the far-field mean when enabled.
struct Decomposition {
  double recent_close;
  double remainder;
};
Decomposition decompose(const JumpField& field, const NoiseSpec& noise, double t, bool correct_far_field);

/// Additive jump sums split by sign, without drift or sigma.
struct SignedParts {
  double positive;
  double negative;
};
SignedParts additive_parts(const JumpField& field, double t);

/// Evaluates on {h, 2h, ...} up to the horizon, merged with the local-maximum
/// times tau_i + |eta_i|^2/(2d) when `refine_peaks` is set.
PathSample eval_path(const SolutionEvaluator& evaluator, double step, bool refine_peaks);

/// Evaluates at the given nondecreasing times (duplicates collapse).
PathSample eval_at(const SolutionEvaluator& evaluator, std::span<const double> times);

/// CSV with columns time,value,refined; metadata as '#' comment lines.
/// `averages` divides each value by its time.
void write_csv(std::ostream& out, const PathSample& path, bool averages = false);

/// Data rows only, no header or metadata.
void write_csv_rows(std::ostream& out, const PathSample& path, bool averages = false);

}  // namespace levyheat
