#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "emln/config.hpp"
#include "emln/report_io.hpp"

using namespace emln;

namespace {

CliOptions parse(std::vector<std::string> args) { return parse_config(args); }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

ExperimentSummary sample_row() {
  ExperimentSummary s;
  s.protocol = Protocol::pegasis_cdma;
  s.range = 25.0;
  s.trials = 1000;
  s.connectivity = 0.994;
  s.mean_lifetime = 498.123456789;
  s.sd_lifetime = 1.0 / 3.0;
  s.mean_energy_per_round = 0.045931234567890123;
  s.mean_delay_per_round = 7.0;
  s.mean_energy_delay = 0.1 + 0.2;
  s.mean_leaf_fraction = std::numeric_limits<double>::quiet_NaN();
  return s;
}

void check_same(const ExperimentSummary& a, const ExperimentSummary& b) {
  CHECK(a.protocol == b.protocol);
  CHECK(a.range == b.range);
  CHECK(a.trials == b.trials);
  CHECK(a.connectivity == b.connectivity);
  CHECK(a.mean_lifetime == b.mean_lifetime);
  CHECK(a.sd_lifetime == b.sd_lifetime);
  CHECK(a.mean_energy_per_round == b.mean_energy_per_round);
  CHECK(a.mean_delay_per_round == b.mean_delay_per_round);
  CHECK(a.mean_energy_delay == b.mean_energy_delay);
  CHECK(std::isnan(a.mean_leaf_fraction) == std::isnan(b.mean_leaf_fraction));
}

}  // namespace

TEST_CASE("defaults") {
  const auto o = parse({});
  const auto& c = o.config;
  CHECK(c.field.node_count == 100);
  CHECK(c.field.width == 100.0);
  CHECK(c.field.height == 100.0);
  CHECK(c.field.sink == Point{50, 300});
  CHECK(c.initial_energy == 1.0);
  CHECK(c.protocol == Protocol::emln);
  CHECK(c.range == 25.0);
  CHECK(c.radio.packet_bits == 2000);
  CHECK(c.leach_p == 0.05);
  CHECK(c.rebuild_period == 1);
  CHECK(c.max_rounds == 100000);
  CHECK(o.out == "-");
  CHECK(o.format == OutputFormat::csv);
  CHECK(o.warnings.empty());
}

TEST_CASE("flags") {
  const auto o = parse({"--protocol", "pegasis-tdma", "--nodes", "50", "--trials", "7", "--seed", "99",
                        "--sink-x", "10", "--sink-y=-20", "--stop-rule", "energy-exhausted",
                        "--format", "json", "--e-fuse", "0", "--per-round"});
  CHECK(o.config.protocol == Protocol::pegasis_tdma);
  CHECK(o.config.field.node_count == 50);
  CHECK(o.config.trials == 7);
  CHECK(o.config.master_seed == 99);
  CHECK(o.config.field.sink == Point{10, -20});
  CHECK(o.config.stop_rule == StopRule::energy_exhausted);
  CHECK(o.config.radio.e_fuse == 0.0);
  CHECK(o.format == OutputFormat::json);
  CHECK(o.per_round);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse({"--trials", "0"}), ConfigError);
  CHECK_THROWS_AS(parse({"--bogus"}), ConfigError);
  CHECK_THROWS_AS(parse({"--range", "abc"}), ConfigError);
  CHECK_THROWS_AS(parse({"--range", "-3"}), ConfigError);
  CHECK_THROWS_AS(parse({"--protocol", "spin"}), ConfigError);
  CHECK_THROWS_AS(parse({"--format", "xml"}), ConfigError);
  CHECK_THROWS_AS(parse({"--stop-rule", "never"}), ConfigError);
  CHECK_THROWS_AS(parse({"--sweep", "15,,x"}), ConfigError);
  CHECK_THROWS_AS(parse({"--sweep", "15,25", "--compare"}), ConfigError);
  CHECK_THROWS_AS(parse({"--compare", "--per-round"}), ConfigError);
  CHECK_THROWS_AS(parse({"--sweep", "15", "--protocol", "leach"}), ConfigError);
  CHECK_THROWS_AS(parse({"--config", "/nonexistent/emln.cfg"}), ConfigError);
  CHECK_THROWS_AS(parse({"--help"}), HelpRequested);
}

TEST_CASE("range is ignored with a warning for other protocols") {
  const auto o = parse({"--protocol", "direct", "--range", "40"});
  REQUIRE(o.warnings.size() == 1);
  CHECK(o.warnings[0].find("--range") != std::string::npos);
  CHECK(parse({"--compare", "--range", "40"}).warnings.empty());
}

TEST_CASE("config file values and flag precedence") {
  const auto path = temp_path("emln_test_config.cfg");
  {
    std::ofstream f(path);
    f << "# experiment\nrange=30\ntrials = 12\nprotocol=emln\n";
  }
  CHECK(parse({"--config", path}).config.range == 30.0);
  CHECK(parse({"--config", path}).config.trials == 12);
  CHECK(parse({"--config", path, "--range", "25"}).config.range == 25.0);
  CHECK(parse({"--range", "25", "--config", path}).config.range == 25.0);

  {
    std::ofstream f(path);
    f << "range=30\nunknown_key=1\n";
  }
  CHECK_THROWS_AS(parse({"--config", path}), ConfigError);
  {
    std::ofstream f(path);
    f << "range=thirty\n";
  }
  CHECK_THROWS_AS(parse({"--config", path}), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("sweep list parsing") {
  CHECK(parse_range_list("15, 20,25") == std::vector<double>{15, 20, 25});
  CHECK(parse({"--sweep", "15,50"}).sweep == std::vector<double>{15, 50});
  CHECK_THROWS_AS(parse_range_list(""), ConfigError);
  CHECK_THROWS_AS(parse_range_list("0"), ConfigError);
}

TEST_CASE("empty sweep writes only the header") {
  std::ostringstream out;
  write_aggregate_csv(out, {});
  CHECK(out.str() == std::string(kAggregateHeader) + "\n");
}

TEST_CASE("aggregate rows round-trip") {
  const std::vector<ExperimentSummary> rows{sample_row(), ExperimentSummary{}};

  std::stringstream csv;
  write_aggregate_csv(csv, rows);
  const auto back = read_aggregate_csv(csv);
  REQUIRE(back.size() == 2);
  check_same(back[0], rows[0]);
  check_same(back[1], rows[1]);
  CHECK(csv.str().find(",nan\n") != std::string::npos);

  std::stringstream json;
  write_aggregate_json(json, rows);
  CHECK(json.str().find("\"mean_leaf_fraction\": null") != std::string::npos);
  const auto back_json = read_aggregate_json(json);
  REQUIRE(back_json.size() == 2);
  check_same(back_json[0], rows[0]);

  std::istringstream bad_header("protocol,range\n");
  CHECK_THROWS_AS(read_aggregate_csv(bad_header), IoError);
  std::istringstream short_row(std::string(kAggregateHeader) + "\nemln,25\n");
  CHECK_THROWS_AS(read_aggregate_csv(short_row), IoError);
  std::istringstream bad_json("{\"schema\": \"aggregate\", \"rows\": [{}]}");
  CHECK_THROWS_AS(read_aggregate_json(bad_json), IoError);
}

TEST_CASE("per-round output") {
  std::vector<SimulationReport> trials(2);
  trials[0].rounds.push_back({1, 0.5, 3, 1.5, 10, 9.5, 0, 0});
  trials[1].rounds.push_back({1, 0.25, 2, 0.5, 10, 9.75, 0, 0});
  trials[1].rounds.push_back({2, 0.125, 2, 0.25, 9, 9.625, 0, 0});
  std::ostringstream csv;
  write_rounds_csv(csv, trials);
  CHECK(csv.str() == "trial,round,energy_j,delay_slots,alive\n0,1,0.5,3,10\n1,1,0.25,2,10\n1,2,0.125,2,9\n");
  std::ostringstream json;
  write_rounds_json(json, trials);
  CHECK(json.str().find("\"schema\": \"per_round\"") != std::string::npos);
}

TEST_CASE("emit to files") {
  const std::vector<ExperimentSummary> rows{sample_row()};
  CHECK_THROWS_AS(emit_results(rows, OutputFormat::csv, "/nonexistent-dir/out.csv"), IoError);
  const auto path = temp_path("emln_test_out.csv");
  emit_results(rows, OutputFormat::csv, path);
  std::ifstream in(path);
  const auto back = read_aggregate_csv(in);
  REQUIRE(back.size() == 1);
  check_same(back[0], rows[0]);
  std::remove(path.c_str());
}

TEST_CASE("identical runs give byte-identical CSV") {
  const auto opts = parse({"--compare", "--nodes", "40", "--trials", "3", "--seed", "17", "--initial-energy", "0.1"});
  const auto csv = [&] {
    std::ostringstream out;
    write_aggregate_csv(out, compare_protocols(opts.config));
    return out.str();
  };
  const auto first = csv();
  CHECK(first == csv());
  std::istringstream in(first);
  CHECK(read_aggregate_csv(in).size() == kAllProtocols.size());
}
