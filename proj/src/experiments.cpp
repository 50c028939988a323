#include "levyheat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "levyheat/csv.hpp"
#include "levyheat/errors.hpp"
#include "levyheat/gaussian_reference.hpp"
#include "levyheat/kahan.hpp"
#include "levyheat/parallel.hpp"
#include "levyheat/point_field.hpp"
#include "levyheat/rng.hpp"
#include "levyheat/slln_criteria.hpp"
#include "levyheat/solution.hpp"

namespace levyheat {

std::string version() { return LEVYHEAT_VERSION; }

namespace {

std::set<std::string> with_noise(std::set<std::string> keys) {
  for (const auto& k : noise_keys()) keys.insert("noise." + k);
  return keys;
}

void check_experiment(const Config& config, const std::string& name) {
  if (config.has("experiment") && config.get_string("experiment") != name)
    throw ConfigError("config is for experiment '" + config.get_string("experiment") + "', not '" + name + "'",
                      config.line_of("experiment"));
}

void write_preamble(std::ostream& out, const Config& config, const std::string& name) {
  out << "# levyheat " << version() << '\n';
  out << "# experiment: " << name << '\n';
  for (const auto& [key, value] : config.entries()) out << "# config: " << key << " = " << value << '\n';
}

std::uint64_t master_seed(const Config& config) {
  if (!config.has("seed")) throw ConfigError("missing required key 'seed'");
  return config.get_u64("seed");
}

int positive_int(const Config& config, const std::string& key, int fallback) {
  const int value = config.get_int(key, fallback);
  if (value < 1) throw ConfigError("'" + key + "' must be at least 1", config.line_of(key));
  return value;
}

double positive_double(const Config& config, const std::string& key, double fallback) {
  const double value = config.get_double(key, fallback);
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError("'" + key + "' must be positive and finite", config.line_of(key));
  return value;
}

SpaceTimeWindow read_window(const Config& config, double horizon) {
  SpaceTimeWindow window{horizon, config.get_double("window.R", 5.0), config.get_int("window.d", 1)};
  try {
    window.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid window: ") + e.what());
  }
  return window;
}

NoiseSpec read_noise(const Config& config) {
  return config.has("noise.variant") ? parse_noise(config) : NoiseSpec::standard_poisson();
}

// --- simulate --------------------------------------------------------------

struct Panel {
  std::string name;
  double exponent;  // 0 for the continuous panel
};

std::vector<Panel> read_panels(const Config& config) {
  std::vector<Panel> panels;
  for (const auto& item : config.has("panels") ? config.get_strings("panels") : std::vector<std::string>{"continuous"}) {
    if (item == "continuous") {
      panels.push_back({"continuous", 0.0});
      continue;
    }
    std::istringstream in(item);
    double p = 0.0;
    if (!(in >> p) || !in.eof() || !(p > 0.0) || p > 1.0)
      throw ConfigError("'panels': expected 'continuous' or an exponent in (0, 1], got '" + item + "'",
                        config.line_of("panels"));
    panels.push_back({"n^" + format_double(p), p});
  }
  return panels;
}

std::string simulate_replicate(const Config& config, const NoiseSpec& noise, const SpaceTimeWindow& window,
                               std::uint64_t seed, std::size_t index) {
  const std::string mode = config.get_string("mode", "additive");
  const double step = positive_double(config, "grid.h", 0.01);
  const bool refine = config.get_bool("grid.refine", true);
  const bool averages = config.get_string("output", "values") == "averages";
  const auto n_max = static_cast<std::size_t>(
      config.get_int("panels.n_max", static_cast<int>(std::floor(window.horizon))));

  const JumpField field = sample_field(noise, window, seed);
  const SigmaSpec sigma = parse_sigma(config);
  const SolutionEvaluator ev = mode == "multiplicative" ? SolutionEvaluator::multiplicative(field, noise, sigma)
                                                        : SolutionEvaluator::additive(field, noise, config.get_bool("far_field.correct", true));

  std::ostringstream out;
  for (const auto& panel : read_panels(config)) {
    out << "# replicate: " << index << " seed: " << seed << " panel: " << panel.name << '\n';
    if (panel.exponent == 0.0) {
      const PathSample path = eval_path(ev, step, refine);
      write_csv_rows(out, path, averages);
      // Peak ratio of Y/t over t >= 1: refined grid against integer times.
      double refined_max = -kInfinity;
      for (std::size_t k = 0; k < path.times.size(); ++k)
        if (path.times[k] >= 1.0) refined_max = std::max(refined_max, path.values[k] / path.times[k]);
      double integer_max = -kInfinity;
      for (double t = 1.0; t <= window.horizon; t += 1.0) integer_max = std::max(integer_max, ev(t) / t);
      if (std::isfinite(refined_max) && std::isfinite(integer_max))
        out << "# peak_ratio: refined_max=" << format_double(refined_max) << " integer_max=" << format_double(integer_max)
            << " ratio=" << format_double(refined_max / integer_max) << '\n';
    } else {
      std::vector<double> times;
      for (std::size_t n = 1; n <= n_max; ++n) {
        const double t = std::pow(static_cast<double>(n), panel.exponent);
        if (t > window.horizon) break;
        times.push_back(t);
      }
      write_csv_rows(out, eval_at(ev, times), averages);
    }
  }
  return out.str();
}

// --- classify --------------------------------------------------------------

struct ClassifyRow {
  int d;
  double b, p, q;
  std::optional<double> theta;
  std::optional<double> alpha;
  NoiseSpec noise;
};

std::string kappa_text(const Verdict& v) {
  if (!v.kappa) return "";
  return std::isinf(*v.kappa) ? "inf" : format_double(*v.kappa);
}

}  // namespace

void cmd_simulate(const Config& config, std::ostream& out, int threads) {
  check_experiment(config, "simulate");
  config.require_known(with_noise({"experiment", "seed", "window.T", "window.R", "window.d", "mode", "sigma.variant",
                                   "sigma.k", "sigma.k1", "sigma.k2", "sigma.lipschitz", "grid.h", "grid.refine",
                                   "far_field.correct", "panels", "panels.n_max", "output", "replicates"}));
  const std::uint64_t seed = master_seed(config);
  const NoiseSpec noise = read_noise(config);
  const SpaceTimeWindow window = read_window(config, positive_double(config, "window.T", 200.0));
  const std::string mode = config.get_string("mode", "additive");
  if (mode != "additive" && mode != "multiplicative")
    throw ConfigError("'mode' must be additive or multiplicative", config.line_of("mode"));
  const std::string output = config.get_string("output", "values");
  if (output != "values" && output != "averages")
    throw ConfigError("'output' must be values or averages", config.line_of("output"));
  if (mode == "multiplicative" && noise.drift() != 0.0)
    throw ConfigError("multiplicative mode requires zero drift (set noise.mean to the jump mean)",
                      config.line_of("noise.mean"));
  read_panels(config);
  parse_sigma(config);
  const int replicates = positive_int(config, "replicates", 1);

  std::vector<std::string> blocks(static_cast<std::size_t>(replicates));
  parallel_for(blocks.size(), threads, [&](std::size_t r) {
    blocks[r] = simulate_replicate(config, noise, window, child_seed(seed, r), r);
  });
  write_preamble(out, config, "simulate");
  out << "time,value,refined\n";
  for (const auto& block : blocks) out << block;
}

void cmd_classify(const Config& config, std::ostream& out, int threads) {
  check_experiment(config, "classify");
  config.require_known(with_noise({"experiment", "seed", "classify.mode", "classify.d", "weight.a", "weight.beta",
                                   "weight.gamma", "sequence.b", "sequence.p", "sequence.q", "sequence.theta",
                                   "sequence.values", "numeric.terms"}));
  const std::string mode = config.get_string("classify.mode", "analytic");
  if (mode != "analytic" && mode != "numeric" && mode != "continuous")
    throw ConfigError("'classify.mode' must be analytic, numeric or continuous", config.line_of("classify.mode"));

  const WeightSpec f{config.get_double("weight.a", 1.0), config.get_double("weight.beta", 1.0),
                     config.get_double("weight.gamma", 0.0)};
  try {
    f.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid weight: ") + e.what(), config.line_of("weight.beta"));
  }

  std::vector<double> dims{1.0};
  if (config.has("classify.d")) dims = config.get_doubles("classify.d");
  for (double d : dims)
    if (d != std::floor(d) || d < 1 || d > 3)
      throw ConfigError("'classify.d' entries must be 1, 2 or 3", config.line_of("classify.d"));

  // alpha may be a list for power-tail noise.
  std::vector<std::optional<double>> alphas{std::nullopt};
  if (config.has("noise.alpha") && config.get_string("noise.variant", "") == "power_tail") {
    alphas.clear();
    for (double a : config.get_doubles("noise.alpha")) alphas.emplace_back(a);
  }
  const bool explicit_seq = config.has("sequence.values");
  if (explicit_seq && mode != "numeric")
    throw ConfigError("'sequence.values' is only supported in numeric mode", config.line_of("sequence.values"));
  const bool theta_seq = config.has("sequence.theta");
  std::vector<std::optional<double>> thetas{std::nullopt};
  if (theta_seq) {
    thetas.clear();
    for (double t : config.get_doubles("sequence.theta")) thetas.emplace_back(t);
  }
  std::vector<double> ps{1.0};
  if (config.has("sequence.p")) ps = config.get_doubles("sequence.p");
  if (theta_seq) ps = {0.0};

  std::vector<ClassifyRow> rows;
  for (double dd : dims) {
    const int d = static_cast<int>(dd);
    for (const auto& theta : thetas)
      for (double p0 : ps)
        for (const auto& alpha : alphas) {
          Config local = config;
          if (alpha) local.set("noise.alpha", format_double(*alpha));
          NoiseSpec noise = read_noise(local);
          double p = p0;
          double q = config.get_double("sequence.q", 0.0);
          if (theta) {
            p = d / (d + 2.0);
            q = (1.0 + *theta) * d / (d + 2.0);
          }
          rows.push_back({d, config.get_double("sequence.b", 1.0), p, q, theta, alpha, std::move(noise)});
        }
  }

  const auto n_terms = static_cast<std::size_t>(positive_int(config, "numeric.terms", 100000));
  std::vector<std::string> lines(rows.size());
  auto classify_row = [&](std::size_t i, int inner_threads) {
    const auto& row = rows[i];
    std::ostringstream line;
    line << row.d << ',' << format_double(row.b) << ',' << format_double(row.p) << ',' << format_double(row.q) << ','
         << (row.theta ? format_double(*row.theta) : "") << ',' << (row.alpha ? format_double(*row.alpha) : "") << ','
         << format_double(f.a) << ',' << format_double(f.beta) << ',' << format_double(f.gamma) << ',';
    if (mode == "continuous") {
      const Verdict v = classify_continuous(row.noise, f);
      line << to_string(v.limsup.rule) << ',' << to_string(v.liminf.rule) << ',' << to_string(v.limsup.behavior) << ','
           << to_string(v.liminf.behavior) << ',' << kappa_text(v) << ",,,,";
    } else {
      if (!(row.p > 0.0)) throw ConfigError("'sequence.p' entries must be positive", config.line_of("sequence.p"));
      const SequenceSpec seq = explicit_seq ? SequenceSpec::explicit_list(config.get_doubles("sequence.values"))
                                            : SequenceSpec::power_log(row.b, row.p, row.q);
      if (mode == "analytic") {
        const Verdict v = classify_analytic(row.noise, seq, f, row.d);
        line << to_string(v.limsup.rule) << ',' << to_string(v.liminf.rule) << ',' << to_string(v.limsup.behavior)
             << ',' << to_string(v.liminf.behavior) << ',' << kappa_text(v) << ",,,,";
      } else {
        const NumericReport r = classify_numeric(row.noise, seq, f, row.d, n_terms, inner_threads);
        line << to_string(r.verdict.limsup.rule) << ',' << to_string(r.verdict.liminf.rule) << ','
             << to_string(r.verdict.limsup.behavior) << ',' << to_string(r.verdict.liminf.behavior) << ','
             << kappa_text(r.verdict) << ',' << format_double(r.positive.sum) << ','
             << format_double(r.negative.sum) << ',' << to_string(r.positive.trend) << ','
             << to_string(r.negative.trend);
      }
    }
    lines[i] = line.str();
  };
  if (mode == "numeric") {
    // Threads go to the term evaluation; summation order is fixed.
    for (std::size_t i = 0; i < rows.size(); ++i) classify_row(i, threads);
  } else {
    parallel_for(rows.size(), threads, [&](std::size_t i) { classify_row(i, 1); });
  }

  write_preamble(out, config, "classify");
  out << "d,b,p,q,theta,alpha,a,beta,gamma,rule_limsup,rule_liminf,limsup,liminf,kappa,S_plus_N,S_minus_N,"
         "trend_plus,trend_minus\n";
  for (const auto& l : lines) out << l << '\n';
}

void cmd_gaussian(const Config& config, std::ostream& out, int threads) {
  check_experiment(config, "gaussian");
  config.require_known({"experiment", "seed", "gaussian.output", "gaussian.t_min", "gaussian.t_max",
                        "gaussian.points", "gaussian.times", "replicates"});
  const std::uint64_t seed = master_seed(config);
  const std::string output = config.get_string("gaussian.output", "statistics");
  if (output != "statistics" && output != "variance" && output != "paths")
    throw ConfigError("'gaussian.output' must be statistics, variance or paths", config.line_of("gaussian.output"));
  const double t_min = positive_double(config, "gaussian.t_min", 1.0);
  const double t_max = positive_double(config, "gaussian.t_max", 1e6);
  const int points = positive_int(config, "gaussian.points", 2000);
  if (points > 3000) throw ConfigError("'gaussian.points' is capped at 3000", config.line_of("gaussian.points"));
  if (!(t_max > t_min) && points > 1)
    throw ConfigError("'gaussian.t_max' must exceed 'gaussian.t_min'", config.line_of("gaussian.t_max"));
  const int n_paths = positive_int(config, "replicates", 100);

  std::vector<double> times;
  const Eigen::VectorXd base = points > 1 ? log_spaced(t_min, t_max, points) : Eigen::VectorXd::Constant(1, t_min);
  times.assign(base.data(), base.data() + base.size());
  if (config.has("gaussian.times"))
    for (double t : config.get_doubles("gaussian.times")) {
      if (!(t > 0.0)) throw ConfigError("'gaussian.times' entries must be positive", config.line_of("gaussian.times"));
      times.push_back(t);
    }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  const GaussianGrid grid(Eigen::Map<const Eigen::VectorXd>(times.data(), static_cast<Eigen::Index>(times.size())));
  const Eigen::MatrixXd paths = sample_paths(grid, n_paths, seed, threads);

  write_preamble(out, config, "gaussian");
  if (grid.jitter() > 0.0) out << "# factorization jitter: " << format_double(grid.jitter()) << '\n';
  const Eigen::Index last = grid.times().size() - 1;
  if (output == "statistics") {
    out << "path,lil_statistic,final_time,final_value,final_average\n";
    for (Eigen::Index k = 0; k < paths.cols(); ++k) {
      const double stat = lil_statistic(paths.col(k), grid.times());
      const double t = grid.times()(last);
      out << k << ',' << (std::isfinite(stat) ? format_double(stat) : "") << ',' << format_double(t) << ','
          << format_double(paths(last, k)) << ',' << format_double(paths(last, k) / t) << '\n';
    }
  } else if (output == "variance") {
    out << "time,empirical_variance,variance\n";
    for (Eigen::Index i = 0; i < paths.rows(); ++i) {
      CompensatedSum<double> sq;
      for (Eigen::Index k = 0; k < paths.cols(); ++k) sq += paths(i, k) * paths(i, k);
      const double t = grid.times()(i);
      out << format_double(t) << ',' << format_double(sq.value() / static_cast<double>(paths.cols())) << ','
          << format_double(gaussian_variance(t)) << '\n';
    }
  } else {
    out << "time,value,refined\n";
    for (Eigen::Index k = 0; k < paths.cols(); ++k) {
      out << "# path: " << k << '\n';
      for (Eigen::Index i = 0; i < paths.rows(); ++i)
        out << format_double(grid.times()(i)) << ',' << format_double(paths(i, k)) << ",0\n";
    }
  }
}

void cmd_wlln(const Config& config, std::ostream& out, int threads) {
  check_experiment(config, "wlln");
  config.require_known(with_noise({"experiment", "seed", "window.R", "window.d", "wlln.times", "wlln.p",
                                   "far_field.correct", "replicates"}));
  const std::uint64_t seed = master_seed(config);
  const NoiseSpec noise = read_noise(config);
  std::vector<double> times{5.0, 20.0, 80.0};
  if (config.has("wlln.times")) times = config.get_doubles("wlln.times");
  for (double t : times)
    if (!(t > 0.0) || !std::isfinite(t))
      throw ConfigError("'wlln.times' entries must be positive", config.line_of("wlln.times"));
  const SpaceTimeWindow window = read_window(config, *std::max_element(times.begin(), times.end()));
  const int d = window.dimension;
  const double p = config.get_double("wlln.p", 1.0);
  const double p_max = 1.0 + 2.0 / d;
  if (!(p > 0.0) || !(p < p_max))
    throw MomentRangeError("moment order p = " + format_double(p) + " outside (0, " + format_double(p_max) + ")");
  if (!(p < 1.0 + noise.measure().moment_excess()))
    throw MomentRangeError("moment order p = " + format_double(p) + " is not below the noise's moment range " +
                           format_double(1.0 + noise.measure().moment_excess()));
  const bool correct = config.get_bool("far_field.correct", true);
  const int replicates = positive_int(config, "replicates", 1000);
  const std::size_t n_times = times.size();

  Eigen::MatrixXd errors(static_cast<Eigen::Index>(n_times), replicates);
  parallel_for(static_cast<std::size_t>(replicates), threads, [&](std::size_t r) {
    const JumpField field = sample_field(noise, window, child_seed(seed, r));
    const auto ev = SolutionEvaluator::additive(field, noise, correct);
    for (std::size_t j = 0; j < n_times; ++j)
      errors(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(r)) =
          std::pow(std::abs(ev(times[j]) / times[j] - noise.mean()), p);
  });

  write_preamble(out, config, "wlln");
  out << "time,p,estimate,standard_error,replicates\n";
  for (std::size_t j = 0; j < n_times; ++j) {
    CompensatedSum<double> sum;
    CompensatedSum<double> sq;
    const auto row = errors.row(static_cast<Eigen::Index>(j));
    for (Eigen::Index r = 0; r < row.size(); ++r) sum += row(r);
    const double mean = sum.value() / replicates;
    for (Eigen::Index r = 0; r < row.size(); ++r) sq += (row(r) - mean) * (row(r) - mean);
    const double se = replicates > 1 ? std::sqrt(sq.value() / (replicates - 1) / replicates) : 0.0;
    out << format_double(times[j]) << ',' << format_double(p) << ',' << format_double(mean) << ','
        << format_double(se) << ',' << replicates << '\n';
  }
}

void run_experiment(const std::string& name, const Config& config, std::ostream& out, int threads) {
  if (name == "simulate") return cmd_simulate(config, out, threads);
  if (name == "classify") return cmd_classify(config, out, threads);
  if (name == "gaussian") return cmd_gaussian(config, out, threads);
  if (name == "wlln") return cmd_wlln(config, out, threads);
  throw ConfigError("unknown experiment '" + name + "'");
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) || dynamic_cast<const MomentRangeError*>(&error) ||
      dynamic_cast<const DriftUnsupported*>(&error) || dynamic_cast<const UnsupportedFamily*>(&error))
    return 2;
  if (dynamic_cast<const Error*>(&error)) return 3;
  return 1;
}

}  // namespace levyheat
