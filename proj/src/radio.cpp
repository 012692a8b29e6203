#include "emln/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace emln {

void RadioParams::validate() const {
  if (!(e_elec >= 0.0)) throw ConfigError("e_elec must be non-negative");
  if (!(eps_amp >= 0.0)) throw ConfigError("eps_amp must be non-negative");
  if (!(e_fuse >= 0.0)) throw ConfigError("e_fuse must be non-negative");
  if (packet_bits < 1) throw ConfigError("packet_bits must be at least 1");
}

double tx_energy(const RadioParams& params, std::int64_t bits, double distance) {
  if (bits < 0 || !(distance >= 0.0)) {
    throw std::invalid_argument("tx_energy: bits and distance must be non-negative");
  }
  const double k = static_cast<double>(bits);
  return params.e_elec * k + params.eps_amp * k * distance * distance;
}

double rx_energy(const RadioParams& params, std::int64_t bits) {
  if (bits < 0) throw std::invalid_argument("rx_energy: bits must be non-negative");
  return params.e_elec * static_cast<double>(bits);
}

double fuse_energy(const RadioParams& params, std::int64_t bits, std::int64_t signal_count) {
  if (bits < 0 || signal_count < 0) {
    throw std::invalid_argument("fuse_energy: bits and signal count must be non-negative");
  }
  return params.e_fuse * static_cast<double>(bits) * static_cast<double>(signal_count);
}

double EnergyLedger::total() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < size(); ++i) sum += debit(i);
  return sum;
}

void charge_hop(EnergyLedger& ledger, const Transmission& hop, const RadioParams& params) {
  ledger.add_tx(hop.from, tx_energy(params, params.packet_bits, hop.distance));
  if (hop.to != kNoNode) ledger.add_rx(hop.to, rx_energy(params, params.packet_bits));
}

void charge_fusion(EnergyLedger& ledger, NodeId id, std::size_t received,
                   const RadioParams& params) {
  ledger.add_fuse(id, fuse_energy(params, params.packet_bits,
                                  static_cast<std::int64_t>(received) + 1));
}

std::vector<Transmission> tree_transmissions(const GatherTree& tree,
                                             std::span<const NodeState> nodes, Point sink) {
  if (nodes.size() != tree.size()) {
    throw std::invalid_argument("tree and node list sizes differ");
  }
  std::vector<Transmission> hops;
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (tree.level[v] < 0 || v == tree.root) continue;
    const NodeId p = tree.predecessor[v];
    hops.push_back({v, p, distance(nodes[v].position, nodes[p].position)});
  }
  if (tree.root != kNoNode) {
    hops.push_back({tree.root, kNoNode, distance(nodes[tree.root].position, sink)});
  }
  return hops;
}

EnergyLedger tree_round_energy(const GatherTree& tree, std::span<const NodeState> nodes,
                               Point sink, const RadioParams& params) {
  EnergyLedger ledger(nodes.size());
  for (const auto& hop : tree_transmissions(tree, nodes, sink)) charge_hop(ledger, hop, params);
  for (NodeId u : tree.intermediate_set) charge_fusion(ledger, u, tree.children[u].size(), params);
  return ledger;
}

}  // namespace emln
