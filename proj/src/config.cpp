#include "emln/config.hpp"

#include <algorithm>
#include <sstream>

#include "CLI11.hpp"
#include "format.hpp"

namespace emln {

std::vector<double> parse_range_list(const std::string& text) {
  std::vector<double> ranges;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    double r = 0.0;
    if (!detail::parse_number(item, r) || !(r > 0.0)) {
      throw ConfigError("bad range '" + item + "' in sweep list");
    }
    ranges.push_back(r);
  }
  if (ranges.empty()) throw ConfigError("sweep list is empty");
  return ranges;
}

CliOptions parse_config(const std::vector<std::string>& args) {
  CliOptions opts;
  SimConfig& c = opts.config;

  CLI::App app{"Round-based sensor network data-gathering simulator", "emln_sim"};
  app.set_config("--config", "", "Flat key=value file; flags override its values");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string protocol = "emln";
  std::string format = "csv";
  std::string sweep;
  std::string stop_rule = "first-death";

  app.add_option("--protocol", protocol, "emln | leach | pegasis-tdma | pegasis-cdma | direct");
  app.add_option("--nodes", c.field.node_count, "Number of sensor nodes");
  app.add_option("--width", c.field.width, "Field width (m)");
  app.add_option("--height", c.field.height, "Field height (m)");
  auto* range_opt = app.add_option("--range", c.range, "EMLN transmission range (m)");
  app.add_option("--sink-x", c.field.sink.x, "Sink x (m)");
  app.add_option("--sink-y", c.field.sink.y, "Sink y (m)");
  app.add_option("--trials", c.trials, "Independent trials per experiment");
  app.add_option("--seed", c.master_seed, "Master seed");
  app.add_option("--initial-energy", c.initial_energy, "Initial energy per node (J)");
  app.add_option("--packet-bits", c.radio.packet_bits, "Bits per data packet");
  app.add_option("--e-elec", c.radio.e_elec, "Electronics energy (J/bit)");
  app.add_option("--eps-amp", c.radio.eps_amp, "Amplifier energy (J/bit/m^2)");
  app.add_option("--e-fuse", c.radio.e_fuse, "Fusion energy (J/bit/signal)");
  app.add_option("--leach-p", c.leach_p, "LEACH desired head fraction");
  app.add_option("--rebuild-period", c.rebuild_period, "Rounds between EMLN tree rebuilds");
  app.add_option("--max-rounds", c.max_rounds, "Round cap per trial");
  app.add_option("--stop-rule", stop_rule, "first-death | energy-exhausted");
  app.add_option("--threads", c.threads, "Worker threads (0 = all cores)");
  app.add_option("--sweep", sweep, "Comma-separated EMLN ranges, e.g. 15,20,25");
  app.add_flag("--compare", opts.compare, "Run every protocol on the same deployments");
  app.add_option("--placement", opts.placement, "Fixed node placement file (id x y energy)");
  app.add_option("--out", opts.out, "Output path, '-' for stdout");
  app.add_option("--format", format, "csv | json");
  app.add_flag("--per-round", opts.per_round, "Emit per-round rows");
  app.add_flag("--dump-tree", opts.dump_tree, "Print the round-1 EMLN tree of trial 0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  c.protocol = parse_protocol(protocol);
  opts.format = parse_format(format);
  if (stop_rule == "first-death") {
    c.stop_rule = StopRule::first_death;
  } else if (stop_rule == "energy-exhausted") {
    c.stop_rule = StopRule::energy_exhausted;
  } else {
    throw ConfigError("unknown stop rule '" + stop_rule + "'");
  }
  if (!sweep.empty()) opts.sweep = parse_range_list(sweep);

  if (!opts.sweep.empty() && opts.compare) throw ConfigError("--sweep and --compare are exclusive");
  if (opts.per_round && (!opts.sweep.empty() || opts.compare)) {
    throw ConfigError("--per-round applies to a single experiment only");
  }
  if (!opts.sweep.empty() && c.protocol != Protocol::emln) {
    throw ConfigError("--sweep varies the EMLN range and requires --protocol emln");
  }
  if (range_opt->count() > 0 && c.protocol != Protocol::emln && !opts.compare) {
    opts.warnings.push_back("--range only affects the emln protocol; ignored for " +
                            std::string(to_string(c.protocol)));
  }
  c.validate();
  return opts;
}

}  // namespace emln
