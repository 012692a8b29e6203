#pragma once

#include <cstdint>
#include <vector>

#include "emln/gather_tree.hpp"
#include "emln/geometry.hpp"

namespace emln {

/// First-order radio model constants.
struct RadioParams {
  double e_elec = 50e-9;    // J/bit, transmitter or receiver electronics
  double eps_amp = 100e-12; // J/bit/m^2, transmit amplifier
  double e_fuse = 5e-9;     // J/bit/signal, aggregation
  std::int64_t packet_bits = 2000;

  void validate() const;
};

/// E_elec*k + eps_amp*k*d^2. Throws std::invalid_argument on negative input.
double tx_energy(const RadioParams& params, std::int64_t bits, double distance);
/// E_elec*k.
double rx_energy(const RadioParams& params, std::int64_t bits);
/// e_fuse*k*signals.
double fuse_energy(const RadioParams& params, std::int64_t bits, std::int64_t signal_count);

/// Per-node energy debits for one round, kept per component so that callers
/// can tell what each node paid for.
class EnergyLedger {
 public:
  EnergyLedger() = default;
  explicit EnergyLedger(std::size_t node_count)
      : tx_(node_count, 0.0), rx_(node_count, 0.0), fuse_(node_count, 0.0) {}

  std::size_t size() const { return tx_.size(); }

  void add_tx(NodeId id, double joules) { tx_.at(id) += joules; }
  void add_rx(NodeId id, double joules) { rx_.at(id) += joules; }
  void add_fuse(NodeId id, double joules) { fuse_.at(id) += joules; }

  double tx(NodeId id) const { return tx_.at(id); }
  double rx(NodeId id) const { return rx_.at(id); }
  double fuse(NodeId id) const { return fuse_.at(id); }
  double debit(NodeId id) const { return tx_.at(id) + rx_.at(id) + fuse_.at(id); }

  /// Sum of per-node debits in id order.
  double total() const;

 private:
  std::vector<double> tx_;
  std::vector<double> rx_;
  std::vector<double> fuse_;
};

/// One packet hop. `to == kNoNode` means the sink.
struct Transmission {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  double distance = 0.0;

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

/// Charges a sender for one packet over `hop.distance` and, for in-network
/// hops, the receiver for one reception.
void charge_hop(EnergyLedger& ledger, const Transmission& hop, const RadioParams& params);

/// Charges an aggregating node for fusing `received` packets with its own reading.
void charge_fusion(EnergyLedger& ledger, NodeId id, std::size_t received,
                   const RadioParams& params);

/// Round energy of a gathering tree: leaves pay one transmission to their
/// parent; every intermediate node (root included) pays a reception per
/// child, fusion of children + 1 signals, and one transmission to its parent,
/// the sink standing in as the root's parent. Distances are Euclidean.
EnergyLedger tree_round_energy(const GatherTree& tree, std::span<const NodeState> nodes,
                               Point sink, const RadioParams& params);

/// The hops a tree round performs: one per spanned node, root -> sink last.
std::vector<Transmission> tree_transmissions(const GatherTree& tree,
                                             std::span<const NodeState> nodes, Point sink);

}  // namespace emln
