#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "emln/geometry.hpp"

namespace emln {

enum class NodeRole { absent, root, intermediate, leaf };

/// Rooted data-gathering tree over the alive nodes of a NetworkSnapshot.
///
/// Per-node vectors are indexed by NodeId and sized to the snapshot; nodes
/// outside the tree (dead ones) have level -1 and no predecessor.
struct GatherTree {
  NodeId root = kNoNode;
  std::vector<NodeId> predecessor;             // kNoNode for root / absent
  std::vector<std::vector<NodeId>> children;   // ascending ids
  std::vector<int> level;                      // -1 when absent
  std::vector<NodeId> intermediate_set;        // selection order, root first
  std::vector<NodeId> leaf_set;                // ascending ids
  int height = 0;
  std::vector<std::vector<NodeId>> nodes_at_level;  // every spanned node once

  std::size_t size() const { return predecessor.size(); }
  std::size_t spanned_count() const { return intermediate_set.size() + leaf_set.size(); }
  NodeRole role(NodeId id) const;

  friend bool operator==(const GatherTree&, const GatherTree&) = default;
};

/// Selection key of a node during construction.
struct NodeWeight {
  std::size_t uncovered_count = 0;
  double energy = 0.0;

  double weight() const { return static_cast<double>(uncovered_count) * energy; }
};

/// Builds the energy-aware maximal-leaf gathering tree.
///
/// The root is the alive node maximizing |neighbors| x energy. Each further
/// step picks, among covered nodes that are not yet intermediate and still
/// have uncovered neighbors, the one maximizing |uncovered neighbors| x
/// energy; it becomes intermediate and adopts all its uncovered neighbors as
/// children one level below it. Exact ties are broken uniformly at random
/// from `tie_seed`.
///
/// Returns std::nullopt when the alive nodes do not form a connected graph.
/// Throws std::invalid_argument if `energies` does not match the snapshot or
/// holds a negative value.
std::optional<GatherTree> construct_tree(const NetworkSnapshot& graph,
                                         std::span<const double> energies,
                                         std::uint64_t tie_seed);

/// Convenience overload reading residual energies from the snapshot nodes.
std::optional<GatherTree> construct_tree(const NetworkSnapshot& graph, std::uint64_t tie_seed);

/// Time slots for the root to collect every reading. Leaves have delay 0; an
/// intermediate node drains its children in ascending order of their delay,
/// one slot per child: t <- max(t + 1, delay(child) + 1).
int compute_delay(const GatherTree& tree);

/// Checks every structural invariant of `tree` against `graph`: spanning of
/// the alive nodes, parent edges present in the graph, consistent levels,
/// height, roles, nodes_at_level, and that the intermediate set is a
/// connected dominating set containing the root.
bool validate_tree(const GatherTree& tree, const NetworkSnapshot& graph);

/// Text dump, one line per spanned node: "id level parent role" where parent
/// is "-" for the root and role is root|intermediate|leaf.
void dump_tree(std::ostream& out, const GatherTree& tree);

}  // namespace emln
