#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "levyheat/noise_model.hpp"
#include "levyheat/power_log.hpp"

namespace levyheat {

/// log(e + t).
double log_plus(double t);

/// f(t) = a t^beta (log(e + t))^gamma, nondecreasing (beta > 0, or beta = 0
/// and gamma >= 0).
struct WeightSpec {
  double a = 1.0;
  double beta = 1.0;
  double gamma = 0.0;

  void validate() const;
  double operator()(double t) const { return a * std::pow(t, beta) * std::pow(log_plus(t), gamma); }
  bool unbounded() const { return beta > 0.0 || gamma > 0.0; }
  /// f(t) = a t exactly.
  bool is_linear() const { return beta == 1.0 && gamma == 0.0; }
};

/// t_n = b n^p (log(e + n))^q for n >= 1, or an explicit finite nondecreasing
/// list (numeric mode only).
class SequenceSpec {
 public:
  static SequenceSpec power_log(double b, double p, double q = 0.0);
  static SequenceSpec explicit_list(std::vector<double> values);

  bool is_parametric() const noexcept { return explicit_.empty(); }
  double b() const noexcept { return b_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  const std::vector<double>& values() const noexcept { return explicit_; }

  /// t_n for n >= 1; t_0 = 0.
  double operator()(std::size_t n) const;
  /// Number of available terms (unbounded for parametric families).
  std::size_t length() const noexcept;

 private:
  SequenceSpec() = default;
  double b_ = 1.0;
  double p_ = 1.0;
  double q_ = 0.0;
  std::vector<double> explicit_;
};

enum class SeriesState { Convergent, Divergent, Undecided };

enum class Behavior { Infinite, NegInfinite, FiniteLimit, Zero, Unknown };

struct LimitBehavior {
  Behavior kind = Behavior::Unknown;
  double value = 0.0;  // meaningful for FiniteLimit only

  friend bool operator==(const LimitBehavior&, const LimitBehavior&) = default;
};

/// Which decision rule settled a direction.
enum class Rule {
  IntegralTestDivergent,   // continuous time, int 1/f = inf
  IntegralTestConvergent,  // int 1/f < inf (continuous, or forces the series to converge)
  OneSidedNoise,           // continuous time, no jumps of that sign, f linear
  NoJumpsOfSign,           // the series of that sign is identically zero
  PowerSequence,           // t_n = b n^p, f(t) = a t: converges iff p > d/(d+2)
  MomentGrowthBound,       // finite (1+2/d)-moment and sum f(t_n)^{-(1+2/d)} < inf
  IncrementCriterion,      // finite (1+2/d)-moment: sum (f^{-2/d} ^ dt_n)/f
  HeavyTailExponent,       // power tail with infinite (1+2/d)-moment: direct term asymptotics
  NumericInconclusive,
  Unsupported,
};

struct DirectionVerdict {
  LimitBehavior behavior;
  Rule rule = Rule::Unsupported;
  SeriesState series = SeriesState::Undecided;
};

/// Almost-sure behavior of Y_0(t_n)/f(t_n): limsup follows the positive
/// jumps, liminf the negative ones.
struct Verdict {
  DirectionVerdict limsup;
  DirectionVerdict liminf;
  /// lim t_n / f(t_n), when it was needed.
  std::optional<double> kappa;

  /// Both directions converge to the same finite limit.
  bool slln() const {
    return limsup.behavior.kind == Behavior::FiniteLimit && limsup.behavior == liminf.behavior;
  }
};

std::string to_string(Behavior b);
std::string to_string(const LimitBehavior& b);
std::string to_string(Rule r);
std::string to_string(SeriesState s);

/// True iff int_1^inf 1/f(t) dt diverges.
bool integral_diverges(const WeightSpec& f);

/// Term of the positive (or negative) jump series at one sequence index:
/// int ((|z|/F)^{2/d} ^ dt) |z|/F lambda(dz), F = f(t_n).
double series_term(const NoiseSpec& noise, const WeightSpec& f, double t_n, double dt_n, int d,
                   JumpSign sign = JumpSign::Positive);

/// (F^{-2/d} ^ dt) / F, the measure-free increment term.
double increment_term(double f_tn, double dt_n, int d);

/// lim t_n / f(t_n) for a parametric sequence.
double kappa_limit(const SequenceSpec& seq, const WeightSpec& f);

/// Asymptotic orders of t_n, dt_n and f(t_n) in the power-log family.
struct SequenceOrders {
  PowerLog t;
  PowerLog dt;
  PowerLog f;
};
SequenceOrders sequence_orders(const SequenceSpec& seq, const WeightSpec& f);

/// Closed-form convergence decision for the jump series of one sign.
struct SeriesDecision {
  SeriesState state;
  Rule rule;
};
SeriesDecision decide_series(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d,
                             JumpSign sign);

/// Convergence of sum f(t_n)^{-(1+2/d)}.
bool growth_series_converges(const SequenceSpec& seq, const WeightSpec& f, int d);
/// Convergence of sum (f(t_n)^{-2/d} ^ dt_n) / f(t_n).
bool increment_series_converges(const SequenceSpec& seq, const WeightSpec& f, int d);

/// Verdict along the sequence t_n.
Verdict classify_analytic(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d);

/// Verdict for Y_0(t)/f(t) as t -> inf.
Verdict classify_continuous(const NoiseSpec& noise, const WeightSpec& f);

enum class Trend { Growing, Flattening, Indeterminate };
std::string to_string(Trend t);

/// Partial sums of one sign's series, plus a power-log fit of the tail terms.
struct SeriesEvidence {
  double sum = 0.0;
  /// Partial sums at N/1000, N/100, N/10 and N (indices clamped to >= 1).
  std::vector<std::pair<std::size_t, double>> checkpoints;
  /// Fitted exponents in term ~ n^{-u} (log n)^{-v} over the last two decades.
  double fitted_u = 0.0;
  double fitted_v = 0.0;
  Trend trend = Trend::Indeterminate;
};

struct NumericReport {
  std::size_t terms = 0;
  SeriesEvidence positive;
  SeriesEvidence negative;
  Verdict verdict;
};

/// Sums the series numerically up to N terms. Never claims convergence: the
/// verdict is always NumericInconclusive, with the evidence attached.
NumericReport classify_numeric(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d,
                               std::size_t n_terms, int threads = 1);

}  // namespace levyheat
