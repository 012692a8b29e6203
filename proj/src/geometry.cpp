#include "emln/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "emln/rng.hpp"
#include "format.hpp"

namespace emln {

double distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

void FieldConfig::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) throw ConfigError("field width must be positive");
  if (!(height > 0.0) || !std::isfinite(height)) throw ConfigError("field height must be positive");
  if (node_count < 1) throw ConfigError("node count must be at least 1");
  if (!std::isfinite(sink.x) || !std::isfinite(sink.y)) throw ConfigError("sink position must be finite");
}

std::vector<NodeState> deploy(const FieldConfig& config, double initial_energy,
                              std::uint64_t seed) {
  config.validate();
  if (!(initial_energy >= 0.0)) throw ConfigError("initial energy must be non-negative");

  Rng rng(seed);
  std::vector<NodeState> nodes(config.node_count);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    // x then y, one draw each
    const double x = uniform01(rng) * config.width;
    const double y = uniform01(rng) * config.height;
    nodes[i] = NodeState{i, {x, y}, initial_energy, true};
  }
  return nodes;
}

std::size_t NetworkSnapshot::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const NodeState& n) { return n.alive; }));
}

std::size_t NetworkSnapshot::edge_count() const {
  std::size_t ends = 0;
  for (const auto& adj : adjacency) ends += adj.size();
  return ends / 2;
}

double NetworkSnapshot::mean_degree() const {
  const std::size_t alive = alive_count();
  if (alive == 0) return 0.0;
  return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(alive);
}

NetworkSnapshot build_graph(std::vector<NodeState> nodes, double range) {
  if (!(range > 0.0)) throw std::invalid_argument("transmission range must be positive");

  NetworkSnapshot graph;
  graph.range = range;
  graph.adjacency.resize(nodes.size());
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    if (!nodes[u].alive) continue;
    for (std::size_t v = u + 1; v < nodes.size(); ++v) {
      if (!nodes[v].alive) continue;
      if (distance(nodes[u].position, nodes[v].position) <= range) {
        graph.adjacency[u].push_back(v);
        graph.adjacency[v].push_back(u);
      }
    }
  }
  // u ascending and v ascending per u already yields sorted lists
  graph.nodes = std::move(nodes);
  return graph;
}

bool is_connected(const NetworkSnapshot& graph) {
  const auto first = std::find_if(graph.nodes.begin(), graph.nodes.end(),
                                  [](const NodeState& n) { return n.alive; });
  if (first == graph.nodes.end()) return false;

  std::vector<char> seen(graph.size(), 0);
  std::vector<NodeId> stack{static_cast<NodeId>(first - graph.nodes.begin())};
  seen[stack.back()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : graph.adjacency[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      ++reached;
      stack.push_back(v);
    }
  }
  return reached == graph.alive_count();
}

std::vector<NodeState> read_placement(std::istream& in) {
  std::vector<NodeState> nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;

    std::istringstream fields(line);
    std::string id_s, x_s, y_s, e_s, extra;
    if (!(fields >> id_s >> x_s >> y_s >> e_s) || (fields >> extra)) {
      throw ConfigError("placement line " + std::to_string(line_no) +
                        ": expected 'id x y energy'");
    }
    NodeState node;
    const auto bad = [&] {
      return ConfigError("placement line " + std::to_string(line_no) + ": unparsable number");
    };
    if (!detail::parse_number(id_s, node.id)) throw bad();
    if (!detail::parse_number(x_s, node.position.x)) throw bad();
    if (!detail::parse_number(y_s, node.position.y)) throw bad();
    if (!detail::parse_number(e_s, node.energy)) throw bad();
    if (!(node.energy >= 0.0)) {
      throw ConfigError("placement line " + std::to_string(line_no) + ": negative energy");
    }
    nodes.push_back(node);
  }

  std::sort(nodes.begin(), nodes.end(),
            [](const NodeState& a, const NodeState& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != i) throw ConfigError("placement ids must be exactly 0..n-1");
  }
  return nodes;
}

void write_placement(std::ostream& out, std::span<const NodeState> nodes) {
  for (const auto& n : nodes) {
    out << n.id << ' ' << detail::format_double(n.position.x) << ' '
        << detail::format_double(n.position.y) << ' ' << detail::format_double(n.energy)
        << '\n';
  }
}

}  // namespace emln
