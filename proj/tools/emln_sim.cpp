// Command-line driver: single experiments, EMLN range sweeps and protocol
// comparisons. Data goes to --out (stdout by default); diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "emln/config.hpp"
#include "emln/gather_tree.hpp"
#include "emln/report_io.hpp"
#include "emln/simulation.hpp"

namespace {

int dump_first_tree(const emln::SimConfig& config) {
  const std::uint64_t seed = emln::trial_seed(config.master_seed, 0);
  const auto graph = emln::build_graph(emln::trial_nodes(config, seed), config.range);
  const auto tree = emln::construct_tree(graph, emln::tree_tie_seed(seed, 1));
  if (!tree) {
    std::cerr << "emln_sim: trial 0 graph is disconnected at range " << config.range << '\n';
    return 1;
  }
  emln::dump_tree(std::cout, *tree);
  std::cerr << "delay " << emln::compute_delay(*tree) << " slots, height " << tree->height << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  emln::CliOptions opts;
  try {
    opts = emln::parse_config(std::vector<std::string>(argv + 1, argv + argc));
    if (!opts.placement.empty()) {
      std::ifstream in(opts.placement);
      if (!in) throw emln::ConfigError("cannot read placement file '" + opts.placement + "'");
      opts.config.placement = emln::read_placement(in);
      if (opts.config.placement.empty()) throw emln::ConfigError("placement file has no nodes");
      opts.config.field.node_count = opts.config.placement.size();
    }
  } catch (const emln::HelpRequested& help) {
    std::cout << help.what();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "emln_sim: " << e.what() << '\n';
    return 2;
  }
  for (const auto& w : opts.warnings) std::cerr << "emln_sim: warning: " << w << '\n';

  try {
    if (opts.dump_tree) return dump_first_tree(opts.config);

    if (opts.compare) {
      emln::emit_results(emln::compare_protocols(opts.config), opts.format, opts.out);
    } else if (!opts.sweep.empty()) {
      emln::emit_results(emln::range_sweep(opts.config, opts.sweep), opts.format, opts.out);
    } else if (opts.per_round) {
      emln::emit_rounds(emln::run_trials(opts.config), opts.format, opts.out);
    } else {
      const auto summary = emln::run_experiment(opts.config);
      emln::emit_results(std::vector{summary}, opts.format, opts.out);
    }
  } catch (const std::exception& e) {
    std::cerr << "emln_sim: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
