#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emln/simulation.hpp"

namespace emln {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view name);

inline constexpr std::string_view kAggregateHeader =
    "protocol,range,trials,connectivity,mean_lifetime,sd_lifetime,mean_energy_per_round,"
    "mean_delay_per_round,mean_energy_delay,mean_leaf_fraction";
inline constexpr std::string_view kRoundHeader = "trial,round,energy_j,delay_slots,alive";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Doubles are written in shortest round-trip form; NaN is "nan" in CSV and
// null in JSON.
void write_aggregate_csv(std::ostream& out, std::span<const ExperimentSummary> rows);
void write_aggregate_json(std::ostream& out, std::span<const ExperimentSummary> rows);
void write_rounds_csv(std::ostream& out, std::span<const SimulationReport> trials);
void write_rounds_json(std::ostream& out, std::span<const SimulationReport> trials);

/// Parses what write_aggregate_csv produced. Fields outside the aggregate
/// schema are left at their defaults. Throws IoError on malformed input.
std::vector<ExperimentSummary> read_aggregate_csv(std::istream& in);
std::vector<ExperimentSummary> read_aggregate_json(std::istream& in);

/// Writes aggregate rows to `path` ("-" for stdout). Throws IoError if the
/// file cannot be written.
void emit_results(std::span<const ExperimentSummary> rows, OutputFormat format,
                  const std::string& path);
void emit_rounds(std::span<const SimulationReport> trials, OutputFormat format,
                 const std::string& path);

}  // namespace emln
