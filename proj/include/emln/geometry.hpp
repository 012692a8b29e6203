#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

namespace emln {

using NodeId = std::size_t;

/// Sentinel for "no node" (root predecessor, nodes outside a tree, the sink).
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point a, Point b);

/// Raised for invalid user-supplied configuration (field, radio, simulation).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeState {
  NodeId id = 0;
  Point position;
  double energy = 0.0;  // residual, Joules
  bool alive = true;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

struct FieldConfig {
  double width = 100.0;
  double height = 100.0;
  std::size_t node_count = 100;
  Point sink{50.0, 300.0};  // may lie outside the field

  void validate() const;
};

/// Places node_count nodes uniformly at random in [0,width]x[0,height].
/// The result is a pure function of (config, initial_energy, seed).
std::vector<NodeState> deploy(const FieldConfig& config, double initial_energy,
                              std::uint64_t seed);

/// Unit-disk graph over the alive nodes. Dead nodes keep their slot in
/// `nodes` but have empty adjacency and never appear as a neighbor.
struct NetworkSnapshot {
  std::vector<NodeState> nodes;
  double range = 0.0;
  std::vector<std::vector<NodeId>> adjacency;  // ascending ids

  std::size_t size() const { return nodes.size(); }
  std::size_t alive_count() const;
  std::size_t edge_count() const;
  double mean_degree() const;  // over alive nodes
};

/// Edge (u,v) iff u != v, both alive, and distance(u,v) <= range.
NetworkSnapshot build_graph(std::vector<NodeState> nodes, double range);

/// True iff every alive node is reachable from every other. A snapshot with
/// no alive nodes is reported as not connected.
bool is_connected(const NetworkSnapshot& graph);

// Node placement files: one node per line, "id x y energy". Blank lines and
// lines starting with '#' are skipped. Ids must be exactly 0..n-1 (any order).
std::vector<NodeState> read_placement(std::istream& in);
void write_placement(std::ostream& out, std::span<const NodeState> nodes);

}  // namespace emln
