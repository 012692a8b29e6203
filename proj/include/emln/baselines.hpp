#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "emln/geometry.hpp"
#include "emln/radio.hpp"

namespace emln {

enum class Protocol { emln, leach, pegasis_tdma, pegasis_cdma, direct };

inline constexpr std::array<Protocol, 5> kAllProtocols = {
    Protocol::emln, Protocol::leach, Protocol::pegasis_tdma, Protocol::pegasis_cdma,
    Protocol::direct};

/// "emln", "leach", "pegasis-tdma", "pegasis-cdma", "direct".
std::string_view to_string(Protocol protocol);
/// Inverse of to_string; throws ConfigError for anything else.
Protocol parse_protocol(std::string_view name);

/// Outcome of one data-gathering round.
struct RoundResult {
  EnergyLedger ledger;
  int delay = 0;                            // slots, sink hop excluded
  std::vector<Transmission> transmissions;  // every packet hop, sink hops included
};

// -- PEGASIS ------------------------------------------------------------------

/// Greedy chain: starts at the alive node farthest from the sink and keeps
/// appending the nearest node not yet in the chain (ties to the lower id).
struct Chain {
  std::vector<NodeId> order;
};

Chain build_chain(std::span<const NodeState> nodes, Point sink);

/// Index of the leader within the alive part of a chain.
struct LeaderPosition {
  std::size_t index = 0;
};

/// Uniform leader position among `alive_in_chain` nodes, drawn from `seed`.
LeaderPosition draw_leader(std::size_t alive_in_chain, std::uint64_t seed);

/// Alive chain members in chain order; dead nodes are bridged over.
std::vector<NodeId> alive_chain(const Chain& chain, std::span<const NodeState> nodes);

/// Sequential forwarding along both halves of the chain toward the leader,
/// the two halves running in parallel. Delay = the longer half.
RoundResult pegasis_tdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, LeaderPosition leader);
RoundResult pegasis_tdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, std::uint64_t leader_seed);

/// Binary chain aggregation. Each level pairs the surviving nodes
/// consecutively in chain order; inside a pair the leader receives if it is
/// a member, otherwise the lower chain position does. An unpaired node rises
/// untouched. Delay = ceil(log2 m) for m alive nodes.
RoundResult pegasis_cdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, LeaderPosition leader);
RoundResult pegasis_cdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, std::uint64_t leader_seed);

// -- LEACH --------------------------------------------------------------------

struct ClusterAssignment {
  std::vector<NodeId> heads;    // ascending
  std::vector<NodeId> head_of;  // per node; kNoNode for heads and dead nodes

  std::size_t member_count(NodeId head) const;
};

/// Which nodes already served as head in the running epoch.
struct LeachHistory {
  std::vector<char> served;
};

/// Threshold election. Within an epoch of ceil(1/p) rounds a node that has
/// not yet served elects itself with probability p / (1 - p*(r mod epoch));
/// rounds without any head are redrawn. If no alive node is still eligible
/// the epoch restarts early. Members join their nearest head.
ClusterAssignment leach_elect(std::span<const NodeState> nodes, std::int64_t round_index,
                              double p_head, std::uint64_t seed, LeachHistory& history);

/// Members transmit to their head; heads fuse and transmit to the sink.
/// Delay = largest cluster's member count + number of heads.
RoundResult leach_round(const ClusterAssignment& assignment, std::span<const NodeState> nodes,
                        Point sink, const RadioParams& params);

// -- Direct -------------------------------------------------------------------

/// Every alive node transmits its own reading to the sink; one slot each.
RoundResult direct_round(std::span<const NodeState> nodes, Point sink, const RadioParams& params);

}  // namespace emln
