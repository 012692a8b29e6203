#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "emln/baselines.hpp"
#include "emln/geometry.hpp"
#include "emln/radio.hpp"

namespace emln {

enum class StopRule {
  first_death,       // stop at the first round some node cannot afford
  energy_exhausted,  // declare such nodes dead and keep going
};

struct SimConfig {
  FieldConfig field;
  RadioParams radio;
  Protocol protocol = Protocol::emln;
  double range = 25.0;  // EMLN graph range, meters
  double initial_energy = 1.0;
  std::int64_t max_rounds = 100000;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 1;
  std::int64_t rebuild_period = 1;
  StopRule stop_rule = StopRule::first_death;
  double leach_p = 0.05;
  unsigned threads = 0;  // 0: hardware concurrency
  // Fixed node placement used by every trial instead of a random deployment.
  std::vector<NodeState> placement;

  void validate() const;
};

struct RoundMetrics {
  std::int64_t round = 0;  // 1-based
  double energy_lost = 0.0;
  int delay = 0;
  double energy_delay = 0.0;
  std::size_t alive = 0;          // alive at the start of the round
  double residual_total = 0.0;    // network energy after the round
  std::size_t leaves = 0;         // EMLN only
  std::size_t intermediates = 0;  // EMLN only

  friend bool operator==(const RoundMetrics&, const RoundMetrics&) = default;
};

struct SimulationReport {
  std::uint64_t seed = 0;
  bool connected = true;  // EMLN: graph connected at round 1
  double initial_total_energy = 0.0;
  std::int64_t lifetime = 0;  // rounds completed before the first failure
  std::vector<RoundMetrics> rounds;
  // Round-1 EMLN graph statistics; NaN for other protocols (and the
  // intermediate fraction also when the graph is disconnected).
  double initial_mean_degree = 0.0;
  double initial_intermediate_fraction = 0.0;
  // Means over the completed rounds; NaN when there are none, leaf fraction
  // NaN for protocols without a gathering tree.
  double mean_energy = 0.0;
  double mean_delay = 0.0;
  double mean_energy_delay = 0.0;
  double mean_leaf_fraction = 0.0;
};

/// Seed of trial `index` of an experiment: mix_seed(master_seed, index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index);

/// Node placement a trial starts from: config.placement if set, else a
/// random deployment drawn from the trial seed.
std::vector<NodeState> trial_nodes(const SimConfig& config, std::uint64_t seed);

/// Tie-breaking seed run_trial uses for the EMLN tree of round `round`.
std::uint64_t tree_tie_seed(std::uint64_t seed, std::int64_t round);

/// Deploys nodes from `seed` (or takes config.placement) and runs rounds
/// until the stop rule or max_rounds.
SimulationReport run_trial(const SimConfig& config, std::uint64_t seed);

/// Same, on a fixed node placement (ids 0..n-1).
SimulationReport run_trial(const SimConfig& config, std::vector<NodeState> nodes,
                           std::uint64_t seed);

struct ExperimentSummary {
  Protocol protocol = Protocol::emln;
  double range = 0.0;
  std::int64_t trials = 0;
  std::int64_t connected_trials = 0;
  double connectivity = 0.0;
  double mean_lifetime = 0.0;
  double sd_lifetime = 0.0;
  double mean_energy_per_round = 0.0;
  double mean_delay_per_round = 0.0;
  double mean_energy_delay = 0.0;
  double mean_leaf_fraction = 0.0;
  double mean_first_round_intermediate_fraction = 0.0;  // EMLN only
  double mean_degree = 0.0;                             // EMLN only, round 1
};

/// Folds trial reports (in index order) into summary statistics. Lifetime,
/// energy, delay and leaf statistics cover connected trials only; trials
/// without a completed round are left out of the per-round means.
ExperimentSummary summarize(const SimConfig& config, std::span<const SimulationReport> reports);

/// Runs config.trials trials with seeds trial_seed(master_seed, i), possibly
/// in parallel. Reports are indexed by trial regardless of scheduling.
std::vector<SimulationReport> run_trials(const SimConfig& config);

ExperimentSummary run_experiment(const SimConfig& config);

/// One experiment per range with the same master seed.
std::vector<ExperimentSummary> range_sweep(const SimConfig& config, std::span<const double> ranges);

/// One experiment per protocol on identical deployments.
std::vector<ExperimentSummary> compare_protocols(const SimConfig& config);

}  // namespace emln
