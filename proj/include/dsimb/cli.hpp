#pragma once

#include <iosfwd>

#include "dsimb/evaluation.hpp"

namespace dsimb {

/// Exit statuses of the command-line front end.
enum ExitStatus : int { exit_ok = 0, exit_partial = 1, exit_usage = 2 };

/// Parses a JSON experiment config. Relative dataset paths resolve against
/// base_dir. Throws std::invalid_argument naming the offending field.
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dsimb
