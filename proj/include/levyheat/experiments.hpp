#pragma once

#include <exception>
#include <iosfwd>
#include <string>

#include "levyheat/config.hpp"

namespace levyheat {

/// Library version string embedded in every CSV.
std::string version();

/*!
 * Experiments. Each writes a self-describing CSV to `out`: '#' lines with the
 * version, the experiment name and every config entry, then a fixed header.
 * Output depends on the config only, never on `threads`.
 */
void cmd_simulate(const Config& config, std::ostream& out, int threads = 1);
void cmd_classify(const Config& config, std::ostream& out, int threads = 1);
void cmd_gaussian(const Config& config, std::ostream& out, int threads = 1);
void cmd_wlln(const Config& config, std::ostream& out, int threads = 1);

/// Dispatches on simulate | classify | gaussian | wlln.
void run_experiment(const std::string& name, const Config& config, std::ostream& out, int threads = 1);

/// 2 for invalid input, 3 for numerical failures, 1 otherwise.
int exit_code_for(const std::exception& error);

}  // namespace levyheat
