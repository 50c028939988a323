#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "levyheat/rng.hpp"

namespace levyheat {

enum class JumpSign { Positive, Negative };

constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Point mass `rate` * delta_{size}.
struct DiracAtom {
  double size;
  double rate;
};

/// Density c |z|^{-1-alpha} on [z_min, inf) (or its mirror image for negative
/// jumps). Requires alpha > 1 and z_min >= 1.
struct PowerTail {
  double c;
  double alpha;
  double z_min;
  JumpSign sign = JumpSign::Positive;
};

/*!
 * Finite-activity Levy measure built from atoms and power tails.
 *
 * Every component has finite total mass and finite first absolute moment, and
 * no mass in (-1, 1) other than atoms, so the small-jump log-moment condition
 * holds trivially.
 */
class LevyMeasure {
 public:
  enum class Kind { DiracAtoms, PowerTail, Mixture };

  static LevyMeasure dirac(std::vector<DiracAtom> atoms);
  static LevyMeasure power_tail(PowerTail tail);
  static LevyMeasure mixture(std::vector<DiracAtom> atoms, std::vector<PowerTail> tails);

  Kind kind() const noexcept { return kind_; }
  const std::vector<DiracAtom>& atoms() const noexcept { return atoms_; }
  const std::vector<PowerTail>& tails() const noexcept { return tails_; }

  /// lambda(R).
  double total_mass() const;
  /// lambda restricted to one sign.
  double mass(JumpSign sign) const;
  /// Integral of z lambda(dz).
  double first_signed_moment() const;
  bool has_jumps(JumpSign sign) const { return mass(sign) > 0.0; }
  /// Supremum of eps with m_lambda(1 + eps) finite; infinity for atoms only.
  double moment_excess() const;

  /// Image of the measure under z -> -z.
  LevyMeasure mirrored() const;

 private:
  LevyMeasure(Kind kind, std::vector<DiracAtom> atoms, std::vector<PowerTail> tails);

  Kind kind_;
  std::vector<DiracAtom> atoms_;
  std::vector<PowerTail> tails_;
};

/// Driving noise: Levy measure plus mean m. The drift m0 = m - int z lambda(dz)
/// is fixed at construction; rounding-level drifts are set to exactly zero.
class NoiseSpec {
 public:
  NoiseSpec(LevyMeasure measure, double mean);

  /// lambda = delta_1, m = 1.
  static NoiseSpec standard_poisson();

  const LevyMeasure& measure() const noexcept { return measure_; }
  double mean() const noexcept { return mean_; }
  double drift() const noexcept { return drift_; }
  /// Mean jump size per unit space-time volume, int z lambda(dz).
  double jump_mean() const { return measure_.first_signed_moment(); }

  NoiseSpec mirrored() const { return NoiseSpec(measure_.mirrored(), -mean_); }

 private:
  LevyMeasure measure_;
  double mean_;
  double drift_;
};

/// lambda((x, inf)) for positive sign, lambda((-inf, -x)) for negative.
double tail_mass(const LevyMeasure& measure, double x, JumpSign sign = JumpSign::Positive);

/// Integral of |z|^p over {lower < |z| <= upper} on one side. Throws
/// InfiniteMoment when a power tail makes it diverge.
double partial_moment(const LevyMeasure& measure, double p, double lower, double upper,
                      JumpSign sign = JumpSign::Positive);

/// m_lambda(p) restricted to one side.
inline double absolute_moment(const LevyMeasure& measure, double p, JumpSign sign) {
  return partial_moment(measure, p, 0.0, kInfinity, sign);
}

/// Averaged tail functional of the positive jumps:
/// v_d (r^{-1} int_0^r z lambda(dz) + lambda((r, inf))).
double psi(const LevyMeasure& measure, double r, int d);

/// Draw from lambda / lambda(R).
double sample_jump_size(const LevyMeasure& measure, Rng& rng);
/// Draw from lambda restricted to one side, normalized.
double sample_jump_size(const LevyMeasure& measure, Rng& rng, JumpSign sign);

/// Integral of z^k over (a, b], b possibly infinite. Uses the logarithmic
/// antiderivative at k = -1.
double power_integral(double a, double b, double k);

/// Multiplicative nonlinearity. `Constant` is sigma = k; `TanhRamp` is
/// (k1 + k2)/2 + (k2 - k1)/2 tanh(x * 2L / (k2 - k1)), which stays strictly
/// inside (k1, k2) and has Lipschitz constant L.
class SigmaSpec {
 public:
  struct Constant {
    double k;
  };
  struct TanhRamp {
    double k1;
    double k2;
    double lipschitz;
  };

  static SigmaSpec constant(double k);
  static SigmaSpec tanh_ramp(double k1, double k2, double lipschitz);

  double operator()(double x) const;
  double lower() const;
  double upper() const;
  double lipschitz() const;
  bool is_constant() const { return std::holds_alternative<Constant>(shape_); }
  const std::variant<Constant, TanhRamp>& shape() const noexcept { return shape_; }

 private:
  explicit SigmaSpec(std::variant<Constant, TanhRamp> shape) : shape_(shape) {}
  std::variant<Constant, TanhRamp> shape_;
};

}  // namespace levyheat
