#include "levyheat/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "levyheat/csv.hpp"
#include "levyheat/errors.hpp"

namespace levyheat {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) return false;
  return true;
}

std::optional<double> to_double(const std::string& text) {
  const std::string s = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream in(text);
  while (std::getline(in, current, sep)) parts.push_back(trim(current));
  return parts;
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config config;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
      if (text[pos] == '#' && (pos == 0 || text[pos - 1] == ' ' || text[pos - 1] == '\t')) {
        text.resize(pos);
        break;
      }
    }
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'", line);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
    if (config.has(key))
      throw ConfigError("duplicate key '" + key + "' (first on line " + std::to_string(config.line_of(key)) + ")",
                        line);
    config.entries_[key] = value;
    config.lines_[key] = line;
  }
  return config;
}

Config Config::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

int Config::line_of(const std::string& key) const {
  const auto it = lines_.find(key);
  return it == lines_.end() ? 0 : it->second;
}

void Config::fail(const std::string& key, const std::string& what) const {
  throw ConfigError("'" + key + "': " + what, line_of(key));
}

std::string Config::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  const auto value = to_double(get_string(key));
  if (!value) fail(key, "expected a number, got '" + get_string(key) + "'");
  return *value;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expected an integer, got '" + s + "'");
  return value;
}

std::uint64_t Config::get_u64(const std::string& key) const {
  const std::string s = get_string(key);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "expected an unsigned 64-bit integer, got '" + s + "'");
  return value;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string s = get_string(key);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(key, "expected a boolean, got '" + s + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(get_string(key), ',')) {
    const auto value = to_double(part);
    if (!value) fail(key, "expected a comma-separated list of numbers, got '" + part + "'");
    out.push_back(*value);
  }
  return out;
}

std::vector<std::string> Config::get_strings(const std::string& key) const { return split(get_string(key), ','); }

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'");
  entries_[key] = value;
}

void Config::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : entries_)
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "'", line_of(key));
}

const std::set<std::string>& noise_keys() {
  static const std::set<std::string> keys = {"variant", "atoms", "c", "alpha", "z_min", "sign", "tails", "mean"};
  return keys;
}

namespace {

JumpSign parse_sign(const Config& config, const std::string& key, const std::string& text) {
  if (text == "positive" || text == "+") return JumpSign::Positive;
  if (text == "negative" || text == "-") return JumpSign::Negative;
  throw ConfigError("'" + key + "': sign must be positive or negative, got '" + text + "'", config.line_of(key));
}

std::vector<DiracAtom> parse_atoms(const Config& config, const std::string& key) {
  std::vector<DiracAtom> atoms;
  for (const auto& item : config.get_strings(key)) {
    const auto fields = split(item, ':');
    const auto size = fields.size() == 2 ? to_double(fields[0]) : std::nullopt;
    const auto rate = fields.size() == 2 ? to_double(fields[1]) : std::nullopt;
    if (!size || !rate) throw ConfigError("'" + key + "': atoms are 'size:rate', got '" + item + "'", config.line_of(key));
    atoms.push_back({*size, *rate});
  }
  return atoms;
}

std::vector<PowerTail> parse_tails(const Config& config, const std::string& key) {
  std::vector<PowerTail> tails;
  for (const auto& item : config.get_strings(key)) {
    const auto fields = split(item, ':');
    if (fields.size() != 4)
      throw ConfigError("'" + key + "': tails are 'c:alpha:z_min:sign', got '" + item + "'", config.line_of(key));
    const auto c = to_double(fields[0]);
    const auto alpha = to_double(fields[1]);
    const auto z_min = to_double(fields[2]);
    if (!c || !alpha || !z_min)
      throw ConfigError("'" + key + "': non-numeric tail parameter in '" + item + "'", config.line_of(key));
    tails.push_back({*c, *alpha, *z_min, parse_sign(config, key, fields[3])});
  }
  return tails;
}

}  // namespace

NoiseSpec parse_noise(const Config& config, const std::string& prefix) {
  const auto key = [&](const char* name) { return prefix + "." + name; };
  const std::string variant = config.get_string(key("variant"));
  try {
    if (variant == "standard_poisson") {
      return NoiseSpec(LevyMeasure::dirac({{1.0, 1.0}}), config.get_double(key("mean"), 1.0));
    }
    if (variant == "dirac") return NoiseSpec(LevyMeasure::dirac(parse_atoms(config, key("atoms"))), config.get_double(key("mean")));
    if (variant == "power_tail") {
      const PowerTail tail{config.get_double(key("c"), 1.0), config.get_double(key("alpha")),
                           config.get_double(key("z_min"), 1.0),
                           parse_sign(config, key("sign"), config.get_string(key("sign"), "positive"))};
      return NoiseSpec(LevyMeasure::power_tail(tail), config.get_double(key("mean")));
    }
    if (variant == "mixture") {
      auto atoms = config.has(key("atoms")) ? parse_atoms(config, key("atoms")) : std::vector<DiracAtom>{};
      auto tails = config.has(key("tails")) ? parse_tails(config, key("tails")) : std::vector<PowerTail>{};
      return NoiseSpec(LevyMeasure::mixture(std::move(atoms), std::move(tails)), config.get_double(key("mean")));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid noise: ") + e.what(), config.line_of(key("variant")));
  }
  throw ConfigError("'" + key("variant") + "': unknown noise variant '" + variant + "'", config.line_of(key("variant")));
}

namespace {

std::string sign_name(JumpSign s) { return s == JumpSign::Positive ? "positive" : "negative"; }

std::string atoms_text(const std::vector<DiracAtom>& atoms) {
  std::string out;
  for (const auto& a : atoms) out += (out.empty() ? "" : ", ") + format_double(a.size) + ":" + format_double(a.rate);
  return out;
}

}  // namespace

std::string format_noise(const NoiseSpec& noise, const std::string& prefix) {
  std::ostringstream out;
  const auto& m = noise.measure();
  switch (m.kind()) {
    case LevyMeasure::Kind::DiracAtoms:
      out << prefix << ".variant = dirac\n" << prefix << ".atoms = " << atoms_text(m.atoms()) << '\n';
      break;
    case LevyMeasure::Kind::PowerTail: {
      const auto& t = m.tails().front();
      out << prefix << ".variant = power_tail\n"
          << prefix << ".c = " << format_double(t.c) << '\n'
          << prefix << ".alpha = " << format_double(t.alpha) << '\n'
          << prefix << ".z_min = " << format_double(t.z_min) << '\n'
          << prefix << ".sign = " << sign_name(t.sign) << '\n';
      break;
    }
    case LevyMeasure::Kind::Mixture: {
      out << prefix << ".variant = mixture\n";
      if (!m.atoms().empty()) out << prefix << ".atoms = " << atoms_text(m.atoms()) << '\n';
      if (!m.tails().empty()) {
        out << prefix << ".tails = ";
        bool first = true;
        for (const auto& t : m.tails()) {
          out << (first ? "" : ", ") << format_double(t.c) << ':' << format_double(t.alpha) << ':'
              << format_double(t.z_min) << ':' << sign_name(t.sign);
          first = false;
        }
        out << '\n';
      }
      break;
    }
  }
  out << prefix << ".mean = " << format_double(noise.mean()) << '\n';
  return out.str();
}

SigmaSpec parse_sigma(const Config& config, const std::string& prefix) {
  const std::string variant = config.get_string(prefix + ".variant", "constant");
  try {
    if (variant == "constant") return SigmaSpec::constant(config.get_double(prefix + ".k", 1.0));
    if (variant == "tanh_ramp")
      return SigmaSpec::tanh_ramp(config.get_double(prefix + ".k1"), config.get_double(prefix + ".k2"),
                                  config.get_double(prefix + ".lipschitz", 1.0));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid sigma: ") + e.what(), config.line_of(prefix + ".variant"));
  }
  throw ConfigError("'" + prefix + ".variant': unknown sigma variant '" + variant + "'",
                    config.line_of(prefix + ".variant"));
}

}  // namespace levyheat
