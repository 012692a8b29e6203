#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "emln/report_io.hpp"
#include "emln/simulation.hpp"

namespace emln {

/// Everything the command line asks for.
struct CliOptions {
  SimConfig config;
  std::vector<double> sweep;  // non-empty: one experiment per range
  bool compare = false;       // all protocols on identical deployments
  bool per_round = false;     // per-round rows instead of aggregates
  bool dump_tree = false;     // print the round-1 tree of trial 0 and exit
  std::string placement;      // optional fixed node placement file
  std::string out = "-";
  OutputFormat format = OutputFormat::csv;
  std::vector<std::string> warnings;
};

/// Thrown for --help; what() carries the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv-style arguments (without the program name). A flat
/// "key=value" file given with --config supplies values that flags then
/// override; keys are the long flag names. Unknown flags or keys,
/// unparsable numbers and invalid combinations raise ConfigError.
CliOptions parse_config(const std::vector<std::string>& args);

/// Parses "15,20,25" into ranges.
std::vector<double> parse_range_list(const std::string& text);

}  // namespace emln
