#include "levyheat/slln_criteria.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "levyheat/csv.hpp"
#include "levyheat/errors.hpp"
#include "levyheat/kahan.hpp"
#include "levyheat/parallel.hpp"

namespace levyheat {

double log_plus(double t) { return std::log(std::numbers::e + t); }

void WeightSpec::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("weight scale a must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("weight exponent beta must be nonnegative");
  if (!std::isfinite(gamma)) throw DomainError("weight log exponent gamma must be finite");
  if (beta == 0.0 && gamma < 0.0) throw DomainError("weight must be nondecreasing (beta = 0 needs gamma >= 0)");
}

SequenceSpec SequenceSpec::power_log(double b, double p, double q) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("sequence scale b must be positive");
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("sequence exponent p must be positive");
  if (!std::isfinite(q)) throw DomainError("sequence log exponent q must be finite");
  SequenceSpec s;
  s.b_ = b;
  s.p_ = p;
  s.q_ = q;
  return s;
}

SequenceSpec SequenceSpec::explicit_list(std::vector<double> values) {
  if (values.empty()) throw DomainError("explicit sequence must not be empty");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] > 0.0) || !std::isfinite(values[k])) throw DomainError("sequence values must be positive");
    if (k > 0 && values[k] < values[k - 1]) throw DomainError("explicit sequence must be nondecreasing");
  }
  SequenceSpec s;
  s.explicit_ = std::move(values);
  return s;
}

double SequenceSpec::operator()(std::size_t n) const {
  if (n == 0) return 0.0;
  if (!is_parametric()) {
    if (n > explicit_.size()) throw DomainError("index beyond the explicit sequence");
    return explicit_[n - 1];
  }
  const double x = static_cast<double>(n);
  return b_ * std::pow(x, p_) * std::pow(log_plus(x), q_);
}

std::size_t SequenceSpec::length() const noexcept {
  return is_parametric() ? std::numeric_limits<std::size_t>::max() : explicit_.size();
}

std::string to_string(Behavior b) {
  switch (b) {
    case Behavior::Infinite:
      return "infinite";
    case Behavior::NegInfinite:
      return "neg_infinite";
    case Behavior::FiniteLimit:
      return "finite";
    case Behavior::Zero:
      return "zero";
    case Behavior::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string to_string(const LimitBehavior& b) {
  if (b.kind == Behavior::FiniteLimit) return "finite(" + format_double(b.value) + ")";
  return to_string(b.kind);
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::IntegralTestDivergent:
      return "integral_test_divergent";
    case Rule::IntegralTestConvergent:
      return "integral_test_convergent";
    case Rule::OneSidedNoise:
      return "one_sided_noise";
    case Rule::NoJumpsOfSign:
      return "no_jumps_of_sign";
    case Rule::PowerSequence:
      return "power_sequence";
    case Rule::MomentGrowthBound:
      return "moment_growth_bound";
    case Rule::IncrementCriterion:
      return "increment_criterion";
    case Rule::HeavyTailExponent:
      return "heavy_tail_exponent";
    case Rule::NumericInconclusive:
      return "numeric_inconclusive";
    case Rule::Unsupported:
      return "unsupported";
  }
  return "unsupported";
}

std::string to_string(SeriesState s) {
  switch (s) {
    case SeriesState::Convergent:
      return "convergent";
    case SeriesState::Divergent:
      return "divergent";
    case SeriesState::Undecided:
      return "undecided";
  }
  return "undecided";
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Growing:
      return "growing";
    case Trend::Flattening:
      return "flattening";
    case Trend::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

bool integral_diverges(const WeightSpec& f) {
  f.validate();
  // int^inf t^{-beta} (log t)^{-gamma} dt diverges iff beta < 1, or beta = 1 and gamma <= 1.
  return summable(PowerLog{-f.beta, -f.gamma, 0.0}) == false;
}

double increment_term(double f_tn, double dt_n, int d) {
  return std::min(std::pow(f_tn, -2.0 / d), dt_n) / f_tn;
}

double series_term(const NoiseSpec& noise, const WeightSpec& f, double t_n, double dt_n, int d, JumpSign sign) {
  if (d < 1) throw DomainError("dimension must be positive");
  if (dt_n < 0.0) throw DomainError("sequence increments must be nonnegative");
  const double scale = f(t_n);
  if (!(scale > 0.0)) throw DomainError("weight must be positive at t_n");
  if (dt_n == 0.0) return 0.0;
  // Below z* = f dt^{d/2} the first argument of the minimum is smaller.
  const double split = scale * std::pow(dt_n, 0.5 * d);
  const double exponent = 1.0 + 2.0 / d;
  const auto& lambda = noise.measure();
  const double small = partial_moment(lambda, exponent, 0.0, split, sign) / std::pow(scale, exponent);
  const double large = partial_moment(lambda, 1.0, split, kInfinity, sign) * dt_n / scale;
  return small + large;
}

double kappa_limit(const SequenceSpec& seq, const WeightSpec& f) {
  if (!seq.is_parametric()) throw UnsupportedFamily("kappa needs a parametric sequence");
  f.validate();
  // t / f(t) = t^{1-beta} (log(e+t))^{-gamma} / a along t_n -> inf.
  const int trend = PowerLog{1.0 - f.beta, -f.gamma, 0.0}.trend();
  if (trend > 0) return kInfinity;
  if (trend < 0) return 0.0;
  return 1.0 / f.a;
}

SequenceOrders sequence_orders(const SequenceSpec& seq, const WeightSpec& f) {
  if (!seq.is_parametric()) throw UnsupportedFamily("asymptotic orders need a parametric sequence");
  const double p = seq.p();
  const double q = seq.q();
  // log t_n ~ p log n, so (log(e + t_n))^gamma contributes (log n)^gamma.
  return {PowerLog{p, q, 0.0}, PowerLog{p - 1.0, q, 0.0}, PowerLog{p * f.beta, q * f.beta + f.gamma, 0.0}};
}

namespace {

PowerLog increment_order(const SequenceOrders& o, int d) { return min(o.f.pow(-2.0 / d), o.dt) / o.f; }

// Order of int ((z/F)^{2/d} ^ D) (z/F) lambda(dz) for a power tail with
// alpha <= 1 + 2/d. With z* = F D^{d/2}: when z* stays bounded only the
// linear part survives and the term is ~ D/F; otherwise both parts are
// ~ F^{-alpha} D^{(d/2)(1+2/d-alpha)}, with a log z* factor at alpha = 1 + 2/d.
PowerLog heavy_tail_order(const SequenceOrders& o, double alpha, int d) {
  const PowerLog split = o.f * o.dt.pow(0.5 * d);
  if (split.trend() <= 0) return o.dt / o.f;
  const double excess = 1.0 + 2.0 / d - alpha;
  if (excess > kExponentTie) return o.f.pow(-alpha) * o.dt.pow(0.5 * d * excess);
  PowerLog log_split;
  if (split.n_exp > kExponentTie)
    log_split = {0.0, 1.0, 0.0};
  else if (split.log_exp > kExponentTie)
    log_split = {0.0, 0.0, 1.0};
  else
    throw UnsupportedFamily("split point grows slower than any power of log log n");
  return o.f.pow(-1.0 - 2.0 / d) * log_split;
}

bool finite_critical_moment(const LevyMeasure& lambda, JumpSign sign, int d) {
  const double critical = 1.0 + 2.0 / d;
  for (const auto& t : lambda.tails())
    if (t.sign == sign && t.alpha <= critical + kExponentTie) return false;
  return true;
}

}  // namespace

bool growth_series_converges(const SequenceSpec& seq, const WeightSpec& f, int d) {
  return summable(sequence_orders(seq, f).f.pow(-1.0 - 2.0 / d));
}

bool increment_series_converges(const SequenceSpec& seq, const WeightSpec& f, int d) {
  return summable(increment_order(sequence_orders(seq, f), d));
}

SeriesDecision decide_series(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d,
                             JumpSign sign) {
  if (d < 1) throw DomainError("dimension must be positive");
  f.validate();
  if (!seq.is_parametric()) throw UnsupportedFamily("closed-form decisions need a parametric sequence");
  const auto& lambda = noise.measure();
  if (!lambda.has_jumps(sign)) return {SeriesState::Convergent, Rule::NoJumpsOfSign};
  if (!integral_diverges(f)) return {SeriesState::Convergent, Rule::IntegralTestConvergent};

  if (seq.q() == 0.0 && f.is_linear()) {
    const double threshold = static_cast<double>(d) / (d + 2);
    const bool converges = seq.p() > threshold + kExponentTie;
    return {converges ? SeriesState::Convergent : SeriesState::Divergent, Rule::PowerSequence};
  }

  const SequenceOrders orders = sequence_orders(seq, f);
  if (finite_critical_moment(lambda, sign, d)) {
    if (growth_series_converges(seq, f, d)) return {SeriesState::Convergent, Rule::MomentGrowthBound};
    return {summable(increment_order(orders, d)) ? SeriesState::Convergent : SeriesState::Divergent,
            Rule::IncrementCriterion};
  }

  // The series is additive over the components of lambda; atoms and light
  // tails behave like the increment series.
  bool converges = true;
  const double critical = 1.0 + 2.0 / d;
  for (const auto& a : lambda.atoms())
    if ((a.size > 0.0) == (sign == JumpSign::Positive)) converges = converges && summable(increment_order(orders, d));
  for (const auto& t : lambda.tails()) {
    if (t.sign != sign) continue;
    const PowerLog term =
        t.alpha <= critical + kExponentTie ? heavy_tail_order(orders, t.alpha, d) : increment_order(orders, d);
    converges = converges && summable(term);
  }
  return {converges ? SeriesState::Convergent : SeriesState::Divergent, Rule::HeavyTailExponent};
}

namespace {

LimitBehavior scaled_mean(double kappa, double mean) {
  if (mean == 0.0 || kappa == 0.0) return {Behavior::Zero, 0.0};
  if (std::isinf(kappa)) return {mean > 0.0 ? Behavior::Infinite : Behavior::NegInfinite, 0.0};
  return {Behavior::FiniteLimit, kappa * mean};
}

DirectionVerdict direction(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d,
                           JumpSign sign, double kappa) {
  DirectionVerdict out;
  SeriesDecision decision;
  try {
    decision = decide_series(noise, seq, f, d, sign);
  } catch (const UnsupportedFamily&) {
    return out;
  }
  out.rule = decision.rule;
  out.series = decision.state;
  if (decision.state == SeriesState::Divergent) {
    // Blow-up needs liminf f(t_n)/t_n > 0, i.e. f grows at least linearly.
    const bool at_least_linear = PowerLog{f.beta - 1.0, f.gamma, 0.0}.trend() >= 0;
    if (at_least_linear)
      out.behavior = {sign == JumpSign::Positive ? Behavior::Infinite : Behavior::NegInfinite, 0.0};
  } else if (f.unbounded() && !(noise.mean() == 0.0 && std::isinf(kappa))) {
    out.behavior = scaled_mean(kappa, noise.mean());
  }
  return out;
}

}  // namespace

Verdict classify_analytic(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d) {
  if (!seq.is_parametric()) throw UnsupportedFamily("analytic classification needs a parametric sequence");
  Verdict v;
  const double kappa = kappa_limit(seq, f);
  v.kappa = kappa;
  v.limsup = direction(noise, seq, f, d, JumpSign::Positive, kappa);
  v.liminf = direction(noise, seq, f, d, JumpSign::Negative, kappa);
  return v;
}

Verdict classify_continuous(const NoiseSpec& noise, const WeightSpec& f) {
  Verdict v;
  if (!integral_diverges(f)) {
    v.limsup = {{Behavior::Zero, 0.0}, Rule::IntegralTestConvergent, SeriesState::Convergent};
    v.liminf = v.limsup;
    return v;
  }
  auto side = [&](JumpSign sign) {
    DirectionVerdict out;
    if (noise.measure().has_jumps(sign)) {
      out.rule = Rule::IntegralTestDivergent;
      out.series = SeriesState::Divergent;
      out.behavior = {sign == JumpSign::Positive ? Behavior::Infinite : Behavior::NegInfinite, 0.0};
    } else if (f.is_linear()) {
      out.rule = Rule::OneSidedNoise;
      out.series = SeriesState::Convergent;
      out.behavior = scaled_mean(1.0 / f.a, noise.mean());
    }
    return out;
  };
  v.limsup = side(JumpSign::Positive);
  v.liminf = side(JumpSign::Negative);
  return v;
}

namespace {

SeriesEvidence summarize(const std::vector<double>& terms) {
  SeriesEvidence ev;
  const std::size_t n = terms.size();
  CompensatedSum<double> sum;
  std::vector<std::size_t> marks;
  for (std::size_t div : {1000u, 100u, 10u, 1u}) marks.push_back(std::max<std::size_t>(1, n / div));
  std::size_t next = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    sum += terms[k - 1];
    while (next < marks.size() && marks[next] == k) ev.checkpoints.emplace_back(k, sum.value()), ++next;
  }
  ev.sum = sum.value();

  // Least-squares fit of log term = c - u log n - v log log n on log-spaced
  // indices over the last two decades.
  const double lo = std::log(std::max<double>(3.0, static_cast<double>(n) / 100.0));
  const double hi = std::log(static_cast<double>(n));
  std::vector<std::array<double, 3>> rows;
  std::vector<double> rhs;
  constexpr int samples = 200;
  std::size_t last = 0;
  for (int s = 0; s <= samples && hi > lo; ++s) {
    const auto k = static_cast<std::size_t>(std::llround(std::exp(lo + (hi - lo) * s / samples)));
    if (k == last || k < 3 || k > n) continue;
    last = k;
    const double term = terms[k - 1];
    if (!(term > 0.0)) continue;
    const double x = static_cast<double>(k);
    rows.push_back({1.0, std::log(x), std::log(std::log(x))});
    rhs.push_back(std::log(term));
  }
  if (rows.size() < 10) return ev;
  Eigen::MatrixXd design(static_cast<Eigen::Index>(rows.size()), 3);
  Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    design.row(static_cast<Eigen::Index>(r)) << rows[r][0], rows[r][1], rows[r][2];
    y(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(y);
  ev.fitted_u = -coef(1);
  ev.fitted_v = -coef(2);
  constexpr double margin = 0.1;
  if (ev.fitted_u < 1.0 - margin)
    ev.trend = Trend::Growing;
  else if (ev.fitted_u > 1.0 + margin)
    ev.trend = Trend::Flattening;
  return ev;
}

}  // namespace

NumericReport classify_numeric(const NoiseSpec& noise, const SequenceSpec& seq, const WeightSpec& f, int d,
                               std::size_t n_terms, int threads) {
  if (n_terms < 100) throw DomainError("numeric classification needs at least 100 terms");
  f.validate();
  const std::size_t n = std::min(n_terms, seq.length());
  std::vector<double> plus(n), minus(n);
  const bool has_plus = noise.measure().has_jumps(JumpSign::Positive);
  const bool has_minus = noise.measure().has_jumps(JumpSign::Negative);

  parallel_for(n, threads, [&](std::size_t k) {
    const double t = seq(k + 1);
    const double dt = t - seq(k);
    plus[k] = has_plus ? series_term(noise, f, t, dt, d, JumpSign::Positive) : 0.0;
    minus[k] = has_minus ? series_term(noise, f, t, dt, d, JumpSign::Negative) : 0.0;
  });

  NumericReport report;
  report.terms = n;
  report.positive = summarize(plus);
  report.negative = summarize(minus);
  report.verdict.limsup.rule = Rule::NumericInconclusive;
  report.verdict.liminf.rule = Rule::NumericInconclusive;
  return report;
}

}  // namespace levyheat
