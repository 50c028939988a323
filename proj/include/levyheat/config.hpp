#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "levyheat/noise_model.hpp"

namespace levyheat {

/*!
 * Flat `key = value` configuration. Keys are dotted paths such as
 * `noise.alpha`; '#' starts a comment (at line start, or after whitespace).
 * Values are kept as text and converted on access; conversion errors report
 * the line the key came from.
 */
class Config {
 public:
  static Config parse(std::istream& in);
  static Config parse_string(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  /// Source line of a key, 0 if it was set programmatically or is absent.
  int line_of(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;

  void set(const std::string& key, const std::string& value);

  /// Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;

  /// Entries in key order.
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  std::map<std::string, std::string> entries_;
  std::map<std::string, int> lines_;
};

/// Keys read by parse_noise, relative to the prefix.
const std::set<std::string>& noise_keys();

/// Reads `<prefix>.variant` (standard_poisson | dirac | power_tail | mixture),
/// `atoms` ("size:rate, ..."), `c`, `alpha`, `z_min`, `sign`, `tails`
/// ("c:alpha:z_min:sign, ...") and `mean`.
NoiseSpec parse_noise(const Config& config, const std::string& prefix = "noise");

/// Config block that parse_noise reads back to an equal noise.
std::string format_noise(const NoiseSpec& noise, const std::string& prefix = "noise");

/// `<prefix>.variant` = constant (k) | tanh_ramp (k1, k2, lipschitz).
SigmaSpec parse_sigma(const Config& config, const std::string& prefix = "sigma");

}  // namespace levyheat
