#pragma once

#include <cmath>

namespace levyheat {

/// Exponent differences below this are treated as exact ties.
inline constexpr double kExponentTie = 1e-9;

/*!
 * Asymptotic order n^a (log n)^b (log log n)^c of a positive sequence, up to
 * constant factors. All products and powers of power-log terms stay in this
 * family, so summability reduces to the Bertrand rule on (a, b, c).
 */
struct PowerLog {
  double n_exp = 0.0;
  double log_exp = 0.0;
  double loglog_exp = 0.0;

  friend PowerLog operator*(const PowerLog& x, const PowerLog& y) {
    return {x.n_exp + y.n_exp, x.log_exp + y.log_exp, x.loglog_exp + y.loglog_exp};
  }
  friend PowerLog operator/(const PowerLog& x, const PowerLog& y) {
    return {x.n_exp - y.n_exp, x.log_exp - y.log_exp, x.loglog_exp - y.loglog_exp};
  }
  PowerLog pow(double k) const { return {k * n_exp, k * log_exp, k * loglog_exp}; }

  /// Sign of the leading exponent: +1 grows, -1 decays, 0 bounded above and below.
  int trend() const {
    for (double e : {n_exp, log_exp, loglog_exp}) {
      if (e > kExponentTie) return 1;
      if (e < -kExponentTie) return -1;
    }
    return 0;
  }
};

/// Orders x and y by growth: -1 if x = o(y), +1 if y = o(x), 0 if x ~ y up to constants.
inline int compare(const PowerLog& x, const PowerLog& y) { return (x / y).trend(); }

inline PowerLog min(const PowerLog& x, const PowerLog& y) { return compare(x, y) <= 0 ? x : y; }

/// Bertrand rule: sum n^{-u} (log n)^{-v} (log log n)^{-w} converges iff u > 1,
/// or u = 1 and v > 1, or u = v = 1 and w > 1.
inline bool summable(const PowerLog& term) {
  return compare(term, PowerLog{-1.0, -1.0, -1.0}) < 0;
}

}  // namespace levyheat
