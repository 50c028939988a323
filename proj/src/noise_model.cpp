#include "levyheat/noise_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "levyheat/errors.hpp"
#include "levyheat/special.hpp"

namespace levyheat {

namespace {

double signed_value(double magnitude, JumpSign sign) { return sign == JumpSign::Positive ? magnitude : -magnitude; }

bool on_side(double z, JumpSign sign) { return sign == JumpSign::Positive ? z > 0.0 : z < 0.0; }

double tail_total_mass(const PowerTail& t) { return t.c * std::pow(t.z_min, -t.alpha) / t.alpha; }

void validate(const DiracAtom& a) {
  if (!(a.size != 0.0) || !std::isfinite(a.size)) throw DomainError("atom size must be finite and nonzero");
  if (!(a.rate > 0.0) || !std::isfinite(a.rate)) throw DomainError("atom rate must be positive and finite");
}

void validate(const PowerTail& t) {
  if (!(t.c > 0.0) || !std::isfinite(t.c)) throw DomainError("power tail c must be positive");
  if (!(t.alpha > 1.0) || !std::isfinite(t.alpha))
    throw DomainError("power tail alpha must exceed 1 (finite first moment)");
  if (!(t.z_min >= 1.0) || !std::isfinite(t.z_min)) throw DomainError("power tail z_min must be at least 1");
}

}  // namespace

LevyMeasure::LevyMeasure(Kind kind, std::vector<DiracAtom> atoms, std::vector<PowerTail> tails)
    : kind_(kind), atoms_(std::move(atoms)), tails_(std::move(tails)) {
  if (atoms_.empty() && tails_.empty()) throw DomainError("Levy measure must not be identically zero");
  for (const auto& a : atoms_) validate(a);
  for (const auto& t : tails_) validate(t);
}

LevyMeasure LevyMeasure::dirac(std::vector<DiracAtom> atoms) {
  if (atoms.empty()) throw DomainError("Dirac measure needs at least one atom");
  return LevyMeasure(Kind::DiracAtoms, std::move(atoms), {});
}

LevyMeasure LevyMeasure::power_tail(PowerTail tail) { return LevyMeasure(Kind::PowerTail, {}, {tail}); }

LevyMeasure LevyMeasure::mixture(std::vector<DiracAtom> atoms, std::vector<PowerTail> tails) {
  return LevyMeasure(Kind::Mixture, std::move(atoms), std::move(tails));
}

double LevyMeasure::total_mass() const { return mass(JumpSign::Positive) + mass(JumpSign::Negative); }

double LevyMeasure::mass(JumpSign sign) const {
  double total = 0.0;
  for (const auto& a : atoms_)
    if (on_side(a.size, sign)) total += a.rate;
  for (const auto& t : tails_)
    if (t.sign == sign) total += tail_total_mass(t);
  return total;
}

double LevyMeasure::first_signed_moment() const {
  return absolute_moment(*this, 1.0, JumpSign::Positive) - absolute_moment(*this, 1.0, JumpSign::Negative);
}

double LevyMeasure::moment_excess() const {
  double eps = kInfinity;
  for (const auto& t : tails_) eps = std::min(eps, t.alpha - 1.0);
  return eps;
}

LevyMeasure LevyMeasure::mirrored() const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.size = -a.size;
  auto tails = tails_;
  for (auto& t : tails) t.sign = t.sign == JumpSign::Positive ? JumpSign::Negative : JumpSign::Positive;
  return LevyMeasure(kind_, std::move(atoms), std::move(tails));
}

NoiseSpec::NoiseSpec(LevyMeasure measure, double mean)
    : measure_(std::move(measure)), mean_(mean), drift_(mean - measure_.first_signed_moment()) {
  if (!std::isfinite(mean)) throw DomainError("noise mean must be finite");
  // A mean typed in as the decimal jump mean should give zero drift.
  const double scale = std::max(std::abs(mean), std::abs(measure_.first_signed_moment()));
  if (std::abs(drift_) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) drift_ = 0.0;
}

NoiseSpec NoiseSpec::standard_poisson() { return NoiseSpec(LevyMeasure::dirac({{1.0, 1.0}}), 1.0); }

double power_integral(double a, double b, double k) {
  if (!(a > 0.0) || b < a) throw DomainError("power_integral: need 0 < a <= b");
  const double s = k + 1.0;
  if (std::isinf(b)) {
    if (s >= 0.0) throw InfiniteMoment("power integral diverges at infinity");
    return -std::pow(a, s) / s;
  }
  const double log_ratio = std::log(b / a);
  if (std::abs(s) < 1e-14) return log_ratio;
  return std::pow(a, s) * std::expm1(s * log_ratio) / s;
}

double tail_mass(const LevyMeasure& measure, double x, JumpSign sign) {
  if (!(x > 0.0)) throw DomainError("tail_mass: threshold must be positive");
  double total = 0.0;
  for (const auto& a : measure.atoms())
    if (on_side(a.size, sign) && std::abs(a.size) > x) total += a.rate;
  for (const auto& t : measure.tails()) {
    if (t.sign != sign) continue;
    total += t.c * std::pow(std::max(x, t.z_min), -t.alpha) / t.alpha;
  }
  return total;
}

double partial_moment(const LevyMeasure& measure, double p, double lower, double upper, JumpSign sign) {
  if (!(p > 0.0)) throw DomainError("partial_moment: order must be positive");
  if (lower < 0.0) throw DomainError("partial_moment: lower bound must be nonnegative");
  if (!(upper > lower)) return 0.0;
  double total = 0.0;
  for (const auto& a : measure.atoms()) {
    const double z = std::abs(a.size);
    if (on_side(a.size, sign) && z > lower && z <= upper) total += a.rate * std::pow(z, p);
  }
  for (const auto& t : measure.tails()) {
    if (t.sign != sign) continue;
    const double from = std::max(lower, t.z_min);
    if (std::isinf(upper) && p >= t.alpha)
      throw InfiniteMoment("moment of order " + std::to_string(p) + " is infinite for alpha = " +
                           std::to_string(t.alpha));
    if (upper <= from) continue;
    total += t.c * power_integral(from, upper, p - 1.0 - t.alpha);
  }
  return total;
}

double psi(const LevyMeasure& measure, double r, int d) {
  if (!(r > 0.0)) throw DomainError("psi: radius must be positive");
  return ball_volume(d) *
         (partial_moment(measure, 1.0, 0.0, r, JumpSign::Positive) / r + tail_mass(measure, r, JumpSign::Positive));
}

namespace {

double sample_from(const LevyMeasure& measure, Rng& rng, double total, auto&& include) {
  double u = rng.uniform() * total;
  const PowerTail* last_tail = nullptr;
  const DiracAtom* last_atom = nullptr;
  for (const auto& a : measure.atoms()) {
    if (!include(a.size)) continue;
    last_atom = &a;
    last_tail = nullptr;
    if (u < a.rate) return a.size;
    u -= a.rate;
  }
  for (const auto& t : measure.tails()) {
    if (!include(signed_value(1.0, t.sign))) continue;
    last_tail = &t;
    last_atom = nullptr;
    const double m = tail_total_mass(t);
    if (u < m) break;
    u -= m;
  }
  // Rounding can leave u marginally above the last component's mass.
  if (last_atom != nullptr) return last_atom->size;
  if (last_tail == nullptr) throw DomainError("cannot sample from an empty measure");
  return signed_value(last_tail->z_min * std::pow(rng.uniform(), -1.0 / last_tail->alpha), last_tail->sign);
}

}  // namespace

double sample_jump_size(const LevyMeasure& measure, Rng& rng) {
  return sample_from(measure, rng, measure.total_mass(), [](double) { return true; });
}

double sample_jump_size(const LevyMeasure& measure, Rng& rng, JumpSign sign) {
  const double total = measure.mass(sign);
  if (!(total > 0.0)) throw DomainError("no jumps of the requested sign");
  return sample_from(measure, rng, total, [sign](double z) { return on_side(z, sign); });
}

SigmaSpec SigmaSpec::constant(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("constant sigma must be positive");
  return SigmaSpec(Constant{k});
}

SigmaSpec SigmaSpec::tanh_ramp(double k1, double k2, double lipschitz) {
  if (!(k1 > 0.0) || !(k2 > k1) || !std::isfinite(k2)) throw DomainError("sigma bounds need 0 < k1 < k2");
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) throw DomainError("Lipschitz constant must be positive");
  return SigmaSpec(TanhRamp{k1, k2, lipschitz});
}

double SigmaSpec::operator()(double x) const {
  if (const auto* c = std::get_if<Constant>(&shape_)) return c->k;
  const auto& r = std::get<TanhRamp>(shape_);
  const double half_range = 0.5 * (r.k2 - r.k1);
  const double value = 0.5 * (r.k1 + r.k2) + half_range * std::tanh(x * r.lipschitz / half_range);
  // tanh saturates to +-1 in floating point; keep the bounds strict.
  return std::clamp(value, std::nextafter(r.k1, r.k2), std::nextafter(r.k2, r.k1));
}

double SigmaSpec::lower() const {
  if (const auto* c = std::get_if<Constant>(&shape_)) return c->k;
  return std::get<TanhRamp>(shape_).k1;
}

double SigmaSpec::upper() const {
  if (const auto* c = std::get_if<Constant>(&shape_)) return c->k;
  return std::get<TanhRamp>(shape_).k2;
}

double SigmaSpec::lipschitz() const {
  if (std::holds_alternative<Constant>(shape_)) return 0.0;
  return std::get<TanhRamp>(shape_).lipschitz;
}

}  // namespace levyheat
