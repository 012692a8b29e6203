#include "emln/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "emln/rng.hpp"

namespace emln {

namespace {

// Ledger for a round in which every node that receives, plus `sink_sender`,
// aggregates its inputs with its own reading.
RoundResult settle(std::vector<Transmission> hops, std::size_t node_count, NodeId sink_sender,
                   int delay, const RadioParams& params) {
  RoundResult result{EnergyLedger(node_count), delay, std::move(hops)};
  std::vector<std::size_t> received(node_count, 0);
  for (const auto& hop : result.transmissions) {
    charge_hop(result.ledger, hop, params);
    if (hop.to != kNoNode) ++received[hop.to];
  }
  for (NodeId v = 0; v < node_count; ++v) {
    if (received[v] > 0 || v == sink_sender) charge_fusion(result.ledger, v, received[v], params);
  }
  return result;
}

Transmission hop(std::span<const NodeState> nodes, NodeId from, NodeId to) {
  return {from, to, distance(nodes[from].position, nodes[to].position)};
}

Transmission sink_hop(std::span<const NodeState> nodes, NodeId from, Point sink) {
  return {from, kNoNode, distance(nodes[from].position, sink)};
}

}  // namespace

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::emln: return "emln";
    case Protocol::leach: return "leach";
    case Protocol::pegasis_tdma: return "pegasis-tdma";
    case Protocol::pegasis_cdma: return "pegasis-cdma";
    case Protocol::direct: return "direct";
  }
  return "unknown";
}

Protocol parse_protocol(std::string_view name) {
  for (Protocol p : kAllProtocols) {
    if (to_string(p) == name) return p;
  }
  throw ConfigError("unknown protocol '" + std::string(name) + "'");
}

Chain build_chain(std::span<const NodeState> nodes, Point sink) {
  Chain chain;
  std::vector<char> placed(nodes.size(), 0);
  NodeId current = kNoNode;
  double farthest = -1.0;
  for (const auto& n : nodes) {
    if (!n.alive) continue;
    const double d = distance(n.position, sink);
    if (d > farthest) {
      farthest = d;
      current = n.id;
    }
  }
  while (current != kNoNode) {
    chain.order.push_back(current);
    placed[current] = 1;
    NodeId next = kNoNode;
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& n : nodes) {
      if (!n.alive || placed[n.id]) continue;
      const double d = distance(nodes[current].position, n.position);
      if (d < nearest) {
        nearest = d;
        next = n.id;
      }
    }
    current = next;
  }
  return chain;
}

LeaderPosition draw_leader(std::size_t alive_in_chain, std::uint64_t seed) {
  if (alive_in_chain == 0) return {};
  Rng rng(seed);
  return {uniform_index(rng, alive_in_chain)};
}

std::vector<NodeId> alive_chain(const Chain& chain, std::span<const NodeState> nodes) {
  std::vector<NodeId> alive;
  for (NodeId id : chain.order) {
    if (nodes[id].alive) alive.push_back(id);
  }
  return alive;
}

RoundResult pegasis_tdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, LeaderPosition leader) {
  const auto members = alive_chain(chain, nodes);
  const std::size_t m = members.size();
  if (m == 0) return {EnergyLedger(nodes.size()), 0, {}};
  if (leader.index >= m) throw std::invalid_argument("leader position outside the chain");

  const std::size_t l = leader.index;
  std::vector<Transmission> hops;
  for (std::size_t i = 0; i < l; ++i) hops.push_back(hop(nodes, members[i], members[i + 1]));
  for (std::size_t i = m - 1; i > l; --i) hops.push_back(hop(nodes, members[i], members[i - 1]));
  hops.push_back(sink_hop(nodes, members[l], sink));

  const int delay = static_cast<int>(std::max(l, m - 1 - l));
  return settle(std::move(hops), nodes.size(), members[l], delay, params);
}

RoundResult pegasis_tdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, std::uint64_t leader_seed) {
  const auto leader = draw_leader(alive_chain(chain, nodes).size(), leader_seed);
  return pegasis_tdma_round(chain, nodes, sink, params, leader);
}

RoundResult pegasis_cdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, LeaderPosition leader) {
  const auto members = alive_chain(chain, nodes);
  const std::size_t m = members.size();
  if (m == 0) return {EnergyLedger(nodes.size()), 0, {}};
  if (leader.index >= m) throw std::invalid_argument("leader position outside the chain");

  // Positions into `members`, always in chain order.
  std::vector<std::size_t> active(m);
  for (std::size_t i = 0; i < m; ++i) active[i] = i;

  std::vector<Transmission> hops;
  std::vector<std::size_t> risen;
  int levels = 0;
  while (active.size() > 1) {
    risen.clear();
    std::size_t j = 0;
    for (; j + 1 < active.size(); j += 2) {
      const std::size_t a = active[j];
      const std::size_t b = active[j + 1];
      const std::size_t receiver = (b == leader.index) ? b : a;
      const std::size_t sender = (receiver == a) ? b : a;
      hops.push_back(hop(nodes, members[sender], members[receiver]));
      risen.push_back(receiver);
    }
    if (j < active.size()) risen.push_back(active[j]);
    active.swap(risen);
    ++levels;
  }
  hops.push_back(sink_hop(nodes, members[active.front()], sink));
  return settle(std::move(hops), nodes.size(), members[active.front()], levels, params);
}

RoundResult pegasis_cdma_round(const Chain& chain, std::span<const NodeState> nodes, Point sink,
                               const RadioParams& params, std::uint64_t leader_seed) {
  const auto leader = draw_leader(alive_chain(chain, nodes).size(), leader_seed);
  return pegasis_cdma_round(chain, nodes, sink, params, leader);
}

std::size_t ClusterAssignment::member_count(NodeId head) const {
  return static_cast<std::size_t>(std::count(head_of.begin(), head_of.end(), head));
}

ClusterAssignment leach_elect(std::span<const NodeState> nodes, std::int64_t round_index,
                              double p_head, std::uint64_t seed, LeachHistory& history) {
  if (!(p_head > 0.0 && p_head <= 1.0)) throw ConfigError("LEACH head fraction must be in (0, 1]");
  if (round_index < 0) throw std::invalid_argument("round index must be non-negative");

  // 1/p is computed in floating point; the slack keeps e.g. p = 0.05 at 20.
  const auto epoch = static_cast<std::int64_t>(std::ceil(1.0 / p_head - 1e-9));
  const std::int64_t phase = round_index % epoch;
  if (history.served.size() != nodes.size() || phase == 0) history.served.assign(nodes.size(), 0);

  const auto eligible = [&](const NodeState& n) { return n.alive && !history.served[n.id]; };
  if (std::none_of(nodes.begin(), nodes.end(), eligible)) {
    history.served.assign(nodes.size(), 0);
  }

  ClusterAssignment out;
  out.head_of.assign(nodes.size(), kNoNode);
  if (std::none_of(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.alive; })) {
    return out;
  }

  const double denom = 1.0 - p_head * static_cast<double>(phase);
  // The last round of an epoch must draw every remaining node.
  const double threshold = denom <= p_head * (1.0 + 1e-9) ? 1.0 : p_head / denom;

  Rng rng(seed);
  while (out.heads.empty()) {
    for (const auto& n : nodes) {
      if (eligible(n) && uniform01(rng) < threshold) out.heads.push_back(n.id);
    }
  }
  std::vector<char> is_head(nodes.size(), 0);
  for (NodeId h : out.heads) {
    history.served[h] = 1;
    is_head[h] = 1;
  }

  for (const auto& n : nodes) {
    if (!n.alive || is_head[n.id]) continue;
    NodeId best = kNoNode;
    double nearest = std::numeric_limits<double>::infinity();
    for (NodeId h : out.heads) {
      const double d = distance(n.position, nodes[h].position);
      if (d < nearest) {
        nearest = d;
        best = h;
      }
    }
    out.head_of[n.id] = best;
  }
  return out;
}

RoundResult leach_round(const ClusterAssignment& assignment, std::span<const NodeState> nodes,
                        Point sink, const RadioParams& params) {
  if (assignment.head_of.size() != nodes.size()) {
    throw std::invalid_argument("cluster assignment does not match node list");
  }
  std::vector<Transmission> hops;
  std::vector<std::size_t> members(nodes.size(), 0);
  for (NodeId v = 0; v < nodes.size(); ++v) {
    const NodeId h = assignment.head_of[v];
    if (h == kNoNode || !nodes[v].alive) continue;
    hops.push_back(hop(nodes, v, h));
    ++members[h];
  }
  std::size_t largest = 0;
  for (NodeId h : assignment.heads) {
    hops.push_back(sink_hop(nodes, h, sink));
    largest = std::max(largest, members[h]);
  }

  RoundResult result{EnergyLedger(nodes.size()),
                     static_cast<int>(largest + assignment.heads.size()), std::move(hops)};
  for (const auto& t : result.transmissions) charge_hop(result.ledger, t, params);
  for (NodeId h : assignment.heads) charge_fusion(result.ledger, h, members[h], params);
  return result;
}

RoundResult direct_round(std::span<const NodeState> nodes, Point sink, const RadioParams& params) {
  RoundResult result{EnergyLedger(nodes.size()), 0, {}};
  for (const auto& n : nodes) {
    if (!n.alive) continue;
    result.transmissions.push_back(sink_hop(nodes, n.id, sink));
    charge_hop(result.ledger, result.transmissions.back(), params);
    ++result.delay;
  }
  return result;
}

}  // namespace emln
