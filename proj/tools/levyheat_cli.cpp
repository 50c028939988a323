// levyheat command-line front end: simulate | classify | gaussian | wlln.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "levyheat/config.hpp"
#include "levyheat/errors.hpp"
#include "levyheat/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Levy-noise stochastic heat equation experiments"};
  app.set_version_flag("--version", levyheat::version());
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  int threads = 1;

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Sample solution paths on a grid or along t_n = n^p"},
      {"classify", "Classify limsup/liminf of Y(t_n)/f(t_n)"},
      {"gaussian", "Gaussian reference paths, variance and LIL statistics"},
      {"wlln", "Estimate E|Y(t)/t - m|^p at fixed times"},
  };
  for (const auto& [name, description] : commands) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "Config file (key = value lines)")->required();
    sub->add_option("--seed", seed, "Master seed; overrides the config");
    sub->add_option("--out", out_path, "Output CSV path (default: stdout)");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 1024));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    levyheat::Config config = levyheat::Config::parse_file(config_path);
    if (seed) config.set("seed", std::to_string(*seed));
    // Render fully before touching the output file so failures leave no partial CSV.
    std::ostringstream csv;
    levyheat::run_experiment(name, config, csv, threads);
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw levyheat::ConfigError("cannot open output file '" + out_path + "'");
      out << csv.str();
      if (!out) {
        std::cerr << "error: failed writing '" << out_path << "'\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return levyheat::exit_code_for(e);
  }
  return 0;
}
