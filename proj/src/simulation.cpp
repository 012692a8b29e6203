#include "emln/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "emln/gather_tree.hpp"
#include "emln/rng.hpp"

namespace emln {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sub-stream tags under a trial seed.
enum Stream : std::uint64_t { kDeployStream = 0, kTieStream = 1, kLeaderStream = 2, kLeachStream = 3 };

std::uint64_t round_seed(std::uint64_t trial, Stream stream, std::int64_t round) {
  return mix_seed(mix_seed(trial, stream), static_cast<std::uint64_t>(round));
}

double mean(double sum, std::size_t count) {
  return count == 0 ? kNaN : sum / static_cast<double>(count);
}

// Tree state carried across rounds for the EMLN protocol.
struct TreeState {
  std::optional<NetworkSnapshot> graph;
  std::optional<GatherTree> tree;
  std::vector<char> graph_alive;
  std::int64_t built_round = 0;
};

}  // namespace

void SimConfig::validate() const {
  field.validate();
  radio.validate();
  if (!(range > 0.0) || !std::isfinite(range)) throw ConfigError("range must be positive");
  if (!(initial_energy >= 0.0) || !std::isfinite(initial_energy)) {
    throw ConfigError("initial energy must be non-negative");
  }
  if (max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (rebuild_period < 1) throw ConfigError("rebuild period must be at least 1");
  if (!(leach_p > 0.0 && leach_p <= 1.0)) throw ConfigError("LEACH head fraction must be in (0, 1]");
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix_seed(master_seed, index);
}

std::vector<NodeState> trial_nodes(const SimConfig& config, std::uint64_t seed) {
  if (!config.placement.empty()) return config.placement;
  return deploy(config.field, config.initial_energy, mix_seed(seed, kDeployStream));
}

std::uint64_t tree_tie_seed(std::uint64_t seed, std::int64_t round) {
  return round_seed(seed, kTieStream, round);
}

SimulationReport run_trial(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  return run_trial(config, trial_nodes(config, seed), seed);
}

SimulationReport run_trial(const SimConfig& config, std::vector<NodeState> nodes,
                           std::uint64_t seed) {
  config.validate();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != i) throw ConfigError("node ids must be 0..n-1 in order");
    if (!(nodes[i].energy >= 0.0)) throw ConfigError("node energies must be non-negative");
  }

  const Point sink = config.field.sink;
  const std::size_t n = nodes.size();

  SimulationReport report;
  report.seed = seed;
  for (const auto& node : nodes) report.initial_total_energy += node.energy;
  report.initial_mean_degree = kNaN;
  report.initial_intermediate_fraction = kNaN;

  Chain chain;
  if (config.protocol == Protocol::pegasis_tdma || config.protocol == Protocol::pegasis_cdma) {
    chain = build_chain(nodes, sink);
  }
  LeachHistory leach_history;
  TreeState state;
  std::vector<double> energies(n);
  bool failed = false;

  for (std::int64_t r = 1; r <= config.max_rounds; ++r) {
    std::size_t alive = 0;
    for (const auto& node : nodes) alive += node.alive ? 1 : 0;
    if (alive == 0) break;

    RoundMetrics metrics;
    metrics.round = r;
    metrics.alive = alive;

    RoundResult result;
    switch (config.protocol) {
      case Protocol::emln: {
        std::vector<char> alive_now(n);
        for (std::size_t i = 0; i < n; ++i) alive_now[i] = nodes[i].alive;
        const bool topology_changed = alive_now != state.graph_alive;
        if (topology_changed) {
          // Positions are static; the graph only changes when nodes die.
          state.graph = build_graph(nodes, config.range);
          state.graph_alive = std::move(alive_now);
        }
        if (topology_changed || !state.tree ||
            (r - state.built_round) >= config.rebuild_period) {
          for (std::size_t i = 0; i < n; ++i) energies[i] = nodes[i].energy;
          state.tree = construct_tree(*state.graph, energies, tree_tie_seed(seed, r));
          state.built_round = r;
        }
        if (r == 1) report.initial_mean_degree = state.graph->mean_degree();
        if (!state.tree) {
          if (r == 1) report.connected = false;
          break;
        }
        const GatherTree& tree = *state.tree;
        if (r == 1) {
          report.initial_intermediate_fraction =
              static_cast<double>(tree.intermediate_set.size()) / static_cast<double>(alive);
        }
        result.ledger = tree_round_energy(tree, nodes, sink, config.radio);
        result.delay = compute_delay(tree);
        metrics.leaves = tree.leaf_set.size();
        metrics.intermediates = tree.intermediate_set.size();
        break;
      }
      case Protocol::leach: {
        const auto assignment = leach_elect(nodes, r - 1, config.leach_p,
                                            round_seed(seed, kLeachStream, r), leach_history);
        result = leach_round(assignment, nodes, sink, config.radio);
        break;
      }
      case Protocol::pegasis_tdma:
        result = pegasis_tdma_round(chain, nodes, sink, config.radio,
                                    round_seed(seed, kLeaderStream, r));
        break;
      case Protocol::pegasis_cdma:
        result = pegasis_cdma_round(chain, nodes, sink, config.radio,
                                    round_seed(seed, kLeaderStream, r));
        break;
      case Protocol::direct:
        result = direct_round(nodes, sink, config.radio);
        break;
    }
    if (config.protocol == Protocol::emln && !state.tree) break;

    bool round_fails = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (nodes[i].alive && nodes[i].energy - result.ledger.debit(i) < 0.0) round_fails = true;
    }
    if (round_fails && config.stop_rule == StopRule::first_death) break;

    double lost = 0.0;
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      auto& node = nodes[i];
      if (node.alive) {
        const double debit = result.ledger.debit(i);
        if (node.energy - debit < 0.0) {
          lost += node.energy;
          node.energy = 0.0;
          node.alive = false;
        } else {
          lost += debit;
          node.energy -= debit;
        }
      }
      residual += node.energy;
    }

    metrics.energy_lost = lost;
    metrics.delay = result.delay;
    metrics.energy_delay = lost * static_cast<double>(result.delay);
    metrics.residual_total = residual;
    report.rounds.push_back(metrics);

    if (round_fails) failed = true;
    if (!failed) report.lifetime = r;
  }

  const auto completed = static_cast<std::size_t>(report.lifetime);
  double energy_sum = 0.0, delay_sum = 0.0, ed_sum = 0.0, leaf_sum = 0.0;
  for (std::size_t i = 0; i < completed; ++i) {
    const auto& m = report.rounds[i];
    energy_sum += m.energy_lost;
    delay_sum += m.delay;
    ed_sum += m.energy_delay;
    leaf_sum += static_cast<double>(m.leaves) / static_cast<double>(m.alive);
  }
  report.mean_energy = mean(energy_sum, completed);
  report.mean_delay = mean(delay_sum, completed);
  report.mean_energy_delay = mean(ed_sum, completed);
  report.mean_leaf_fraction = config.protocol == Protocol::emln ? mean(leaf_sum, completed) : kNaN;
  return report;
}

ExperimentSummary summarize(const SimConfig& config, std::span<const SimulationReport> reports) {
  ExperimentSummary s;
  s.protocol = config.protocol;
  s.range = config.range;
  s.trials = static_cast<std::int64_t>(reports.size());

  double life_sum = 0.0, energy_sum = 0.0, delay_sum = 0.0, ed_sum = 0.0, leaf_sum = 0.0;
  double inter_sum = 0.0, degree_sum = 0.0;
  std::size_t connected = 0, with_rounds = 0, with_tree = 0, with_graph = 0;
  for (const auto& r : reports) {
    if (!std::isnan(r.initial_mean_degree)) {
      degree_sum += r.initial_mean_degree;
      ++with_graph;
    }
    if (!r.connected) continue;
    ++connected;
    life_sum += static_cast<double>(r.lifetime);
    if (!std::isnan(r.initial_intermediate_fraction)) {
      inter_sum += r.initial_intermediate_fraction;
      ++with_tree;
    }
    if (r.lifetime == 0) continue;
    ++with_rounds;
    energy_sum += r.mean_energy;
    delay_sum += r.mean_delay;
    ed_sum += r.mean_energy_delay;
    leaf_sum += r.mean_leaf_fraction;
  }
  s.connected_trials = static_cast<std::int64_t>(connected);
  s.connectivity = reports.empty() ? kNaN
                                   : static_cast<double>(connected) / static_cast<double>(reports.size());
  s.mean_lifetime = mean(life_sum, connected);

  double sq = 0.0;
  for (const auto& r : reports) {
    if (!r.connected) continue;
    const double d = static_cast<double>(r.lifetime) - s.mean_lifetime;
    sq += d * d;
  }
  s.sd_lifetime = connected > 1 ? std::sqrt(sq / static_cast<double>(connected - 1)) : 0.0;

  s.mean_energy_per_round = mean(energy_sum, with_rounds);
  s.mean_delay_per_round = mean(delay_sum, with_rounds);
  s.mean_energy_delay = mean(ed_sum, with_rounds);
  s.mean_leaf_fraction = config.protocol == Protocol::emln ? mean(leaf_sum, with_rounds) : kNaN;
  s.mean_first_round_intermediate_fraction = mean(inter_sum, with_tree);
  s.mean_degree = mean(degree_sum, with_graph);
  return s;
}

std::vector<SimulationReport> run_trials(const SimConfig& config) {
  config.validate();
  const auto count = static_cast<std::size_t>(config.trials);
  std::vector<SimulationReport> reports(count);

  unsigned workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(count, 256)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        reports[i] = run_trial(config, trial_seed(config.master_seed, i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return reports;
}

ExperimentSummary run_experiment(const SimConfig& config) {
  const auto reports = run_trials(config);
  return summarize(config, reports);
}

std::vector<ExperimentSummary> range_sweep(const SimConfig& config, std::span<const double> ranges) {
  std::vector<ExperimentSummary> rows;
  for (double range : ranges) {
    SimConfig c = config;
    c.range = range;
    rows.push_back(run_experiment(c));
  }
  return rows;
}

std::vector<ExperimentSummary> compare_protocols(const SimConfig& config) {
  std::vector<ExperimentSummary> rows;
  for (Protocol p : kAllProtocols) {
    SimConfig c = config;
    c.protocol = p;
    rows.push_back(run_experiment(c));
  }
  return rows;
}

}  // namespace emln
