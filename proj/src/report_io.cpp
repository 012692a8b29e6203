#include "emln/report_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "format.hpp"
#include "json.hpp"

namespace emln {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string csv_number(double v) { return std::isnan(v) ? "nan" : detail::format_double(v); }

ordered_json json_number(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

double parse_double(const std::string& text) {
  if (text == "nan") return kNaN;
  double v = 0.0;
  if (!detail::parse_number(text, v)) throw IoError("bad number '" + text + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

ordered_json to_json(const ExperimentSummary& s) {
  ordered_json row;
  row["protocol"] = std::string(to_string(s.protocol));
  row["range"] = json_number(s.range);
  row["trials"] = s.trials;
  row["connectivity"] = json_number(s.connectivity);
  row["mean_lifetime"] = json_number(s.mean_lifetime);
  row["sd_lifetime"] = json_number(s.sd_lifetime);
  row["mean_energy_per_round"] = json_number(s.mean_energy_per_round);
  row["mean_delay_per_round"] = json_number(s.mean_delay_per_round);
  row["mean_energy_delay"] = json_number(s.mean_energy_delay);
  row["mean_leaf_fraction"] = json_number(s.mean_leaf_fraction);
  return row;
}

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  write(file);
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

void write_aggregate_csv(std::ostream& out, std::span<const ExperimentSummary> rows) {
  out << kAggregateHeader << '\n';
  for (const auto& s : rows) {
    out << to_string(s.protocol) << ',' << csv_number(s.range) << ',' << s.trials << ','
        << csv_number(s.connectivity) << ',' << csv_number(s.mean_lifetime) << ','
        << csv_number(s.sd_lifetime) << ',' << csv_number(s.mean_energy_per_round) << ','
        << csv_number(s.mean_delay_per_round) << ',' << csv_number(s.mean_energy_delay) << ','
        << csv_number(s.mean_leaf_fraction) << '\n';
  }
}

void write_aggregate_json(std::ostream& out, std::span<const ExperimentSummary> rows) {
  ordered_json doc;
  doc["schema"] = "aggregate";
  doc["rows"] = ordered_json::array();
  for (const auto& s : rows) doc["rows"].push_back(to_json(s));
  out << doc.dump(2) << '\n';
}

void write_rounds_csv(std::ostream& out, std::span<const SimulationReport> trials) {
  out << kRoundHeader << '\n';
  for (std::size_t t = 0; t < trials.size(); ++t) {
    for (const auto& m : trials[t].rounds) {
      out << t << ',' << m.round << ',' << csv_number(m.energy_lost) << ',' << m.delay << ','
          << m.alive << '\n';
    }
  }
}

void write_rounds_json(std::ostream& out, std::span<const SimulationReport> trials) {
  ordered_json doc;
  doc["schema"] = "per_round";
  doc["rows"] = ordered_json::array();
  for (std::size_t t = 0; t < trials.size(); ++t) {
    for (const auto& m : trials[t].rounds) {
      ordered_json row;
      row["trial"] = t;
      row["round"] = m.round;
      row["energy_j"] = json_number(m.energy_lost);
      row["delay_slots"] = m.delay;
      row["alive"] = m.alive;
      doc["rows"].push_back(std::move(row));
    }
  }
  out << doc.dump(2) << '\n';
}

std::vector<ExperimentSummary> read_aggregate_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kAggregateHeader) {
    throw IoError("missing or unexpected aggregate CSV header");
  }
  std::vector<ExperimentSummary> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 10) throw IoError("aggregate row must have 10 fields");
    ExperimentSummary s;
    try {
      s.protocol = parse_protocol(cells[0]);
    } catch (const ConfigError& e) {
      throw IoError(e.what());
    }
    s.range = parse_double(cells[1]);
    if (!detail::parse_number(cells[2], s.trials)) throw IoError("bad trial count");
    s.connectivity = parse_double(cells[3]);
    s.mean_lifetime = parse_double(cells[4]);
    s.sd_lifetime = parse_double(cells[5]);
    s.mean_energy_per_round = parse_double(cells[6]);
    s.mean_delay_per_round = parse_double(cells[7]);
    s.mean_energy_delay = parse_double(cells[8]);
    s.mean_leaf_fraction = parse_double(cells[9]);
    rows.push_back(s);
  }
  return rows;
}

std::vector<ExperimentSummary> read_aggregate_json(std::istream& in) {
  std::vector<ExperimentSummary> rows;
  try {
    const auto doc = ordered_json::parse(in);
    if (doc.at("schema") != "aggregate") throw IoError("not an aggregate document");
    const auto num = [](const ordered_json& v) { return v.is_null() ? kNaN : v.get<double>(); };
    for (const auto& row : doc.at("rows")) {
      ExperimentSummary s;
      s.protocol = parse_protocol(row.at("protocol").get<std::string>());
      s.range = num(row.at("range"));
      s.trials = row.at("trials").get<std::int64_t>();
      s.connectivity = num(row.at("connectivity"));
      s.mean_lifetime = num(row.at("mean_lifetime"));
      s.sd_lifetime = num(row.at("sd_lifetime"));
      s.mean_energy_per_round = num(row.at("mean_energy_per_round"));
      s.mean_delay_per_round = num(row.at("mean_delay_per_round"));
      s.mean_energy_delay = num(row.at("mean_energy_delay"));
      s.mean_leaf_fraction = num(row.at("mean_leaf_fraction"));
      rows.push_back(s);
    }
  } catch (const ordered_json::exception& e) {
    throw IoError(std::string("malformed aggregate JSON: ") + e.what());
  } catch (const ConfigError& e) {
    throw IoError(e.what());
  }
  return rows;
}

void emit_results(std::span<const ExperimentSummary> rows, OutputFormat format,
                  const std::string& path) {
  with_output(path, [&](std::ostream& out) {
    if (format == OutputFormat::csv) {
      write_aggregate_csv(out, rows);
    } else {
      write_aggregate_json(out, rows);
    }
  });
}

void emit_rounds(std::span<const SimulationReport> trials, OutputFormat format,
                 const std::string& path) {
  with_output(path, [&](std::ostream& out) {
    if (format == OutputFormat::csv) {
      write_rounds_csv(out, trials);
    } else {
      write_rounds_json(out, trials);
    }
  });
}

}  // namespace emln
