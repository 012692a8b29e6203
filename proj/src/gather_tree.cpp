#include "emln/gather_tree.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "emln/rng.hpp"

namespace emln {

namespace {

// Maximum-weight candidate; `candidates` ascending. Exact ties are resolved
// by one uniform draw over the tied ids.
NodeId extract_max(const std::vector<NodeId>& candidates, const std::vector<NodeWeight>& weights,
                   Rng& rng, std::vector<NodeId>& ties) {
  ties.clear();
  double best = -1.0;
  for (NodeId u : candidates) {
    const double w = weights[u].weight();
    if (w > best) {
      best = w;
      ties.clear();
      ties.push_back(u);
    } else if (w == best) {
      ties.push_back(u);
    }
  }
  if (ties.size() == 1) return ties.front();
  return ties[uniform_index(rng, ties.size())];
}

}  // namespace

NodeRole GatherTree::role(NodeId id) const {
  if (id >= size() || level[id] < 0) return NodeRole::absent;
  if (id == root) return NodeRole::root;
  if (std::find(intermediate_set.begin(), intermediate_set.end(), id) != intermediate_set.end()) {
    return NodeRole::intermediate;
  }
  return NodeRole::leaf;
}

std::optional<GatherTree> construct_tree(const NetworkSnapshot& graph,
                                         std::span<const double> energies,
                                         std::uint64_t tie_seed) {
  const std::size_t n = graph.size();
  if (energies.size() != n) throw std::invalid_argument("energies length does not match graph");
  for (double e : energies) {
    if (!(e >= 0.0)) throw std::invalid_argument("energies must be non-negative");
  }

  std::vector<NodeId> vertices;
  for (NodeId u = 0; u < n; ++u) {
    if (graph.nodes[u].alive) vertices.push_back(u);
  }
  if (vertices.empty()) throw std::invalid_argument("graph has no alive nodes");

  GatherTree tree;
  tree.predecessor.assign(n, kNoNode);
  tree.children.assign(n, {});
  tree.level.assign(n, -1);

  std::vector<NodeWeight> weights(n);
  std::vector<char> covered(n, 0);
  std::vector<char> intermediate(n, 0);
  std::vector<char> leaf(n, 0);
  std::size_t covered_count = 0;

  Rng rng(tie_seed);
  std::vector<NodeId> ties;

  const auto cover = [&](NodeId v, NodeId parent) {
    covered[v] = 1;
    leaf[v] = 1;
    ++covered_count;
    tree.predecessor[v] = parent;
    tree.level[v] = tree.level[parent] + 1;
    tree.children[parent].push_back(v);
    if (tree.nodes_at_level.size() <= static_cast<std::size_t>(tree.level[v])) {
      tree.nodes_at_level.resize(tree.level[v] + 1);
    }
    tree.nodes_at_level[tree.level[v]].push_back(v);
    tree.height = std::max(tree.height, tree.level[v]);
  };

  const auto promote = [&](NodeId u) {
    intermediate[u] = 1;
    leaf[u] = 0;
    tree.intermediate_set.push_back(u);
    for (NodeId v : graph.adjacency[u]) {
      if (!covered[v]) cover(v, u);
    }
  };

  // Root: every vertex competes with its full neighbourhood as uncovered.
  for (NodeId u : vertices) weights[u] = {graph.adjacency[u].size(), energies[u]};
  const NodeId root = extract_max(vertices, weights, rng, ties);
  tree.root = root;
  tree.level[root] = 0;
  tree.nodes_at_level.push_back({root});
  covered[root] = 1;
  ++covered_count;
  promote(root);

  std::vector<NodeId> candidates;
  while (covered_count < vertices.size()) {
    // Recount uncovered neighbours, then rebuild the candidate pool from
    // scratch over covered, non-intermediate nodes that can still cover.
    candidates.clear();
    for (NodeId u : vertices) {
      std::size_t uncovered = 0;
      for (NodeId v : graph.adjacency[u]) uncovered += covered[v] ? 0 : 1;
      weights[u] = {uncovered, energies[u]};
      if (covered[u] && !intermediate[u] && uncovered > 0) candidates.push_back(u);
    }
    if (candidates.empty()) return std::nullopt;  // alive graph is disconnected

    promote(extract_max(candidates, weights, rng, ties));
  }

  for (NodeId u : vertices) {
    if (leaf[u]) tree.leaf_set.push_back(u);
  }
  return tree;
}

std::optional<GatherTree> construct_tree(const NetworkSnapshot& graph, std::uint64_t tie_seed) {
  std::vector<double> energies(graph.size());
  for (std::size_t i = 0; i < graph.size(); ++i) energies[i] = graph.nodes[i].energy;
  return construct_tree(graph, energies, tie_seed);
}

int compute_delay(const GatherTree& tree) {
  if (tree.root == kNoNode) return 0;

  std::vector<int> delay(tree.size(), 0);
  std::vector<int> child_delays;
  for (int lvl = tree.height - 1; lvl >= 0; --lvl) {
    for (NodeId u : tree.nodes_at_level[lvl]) {
      const auto& kids = tree.children[u];
      if (kids.empty()) continue;
      child_delays.clear();
      for (NodeId v : kids) child_delays.push_back(delay[v]);
      std::sort(child_delays.begin(), child_delays.end());
      int t = 0;
      for (int d : child_delays) t = std::max(t + 1, d + 1);
      delay[u] = t;
    }
  }
  return delay[tree.root];
}

bool validate_tree(const GatherTree& tree, const NetworkSnapshot& graph) {
  const std::size_t n = graph.size();
  if (tree.predecessor.size() != n || tree.children.size() != n || tree.level.size() != n) {
    return false;
  }
  if (tree.root >= n || !graph.nodes[tree.root].alive) return false;
  if (tree.level[tree.root] != 0 || tree.predecessor[tree.root] != kNoNode) return false;

  const auto adjacent = [&](NodeId a, NodeId b) {
    const auto& adj = graph.adjacency[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  };

  // Roles partition the alive nodes.
  std::vector<char> is_intermediate(n, 0), is_leaf(n, 0);
  for (NodeId u : tree.intermediate_set) {
    if (u >= n || is_intermediate[u]) return false;
    is_intermediate[u] = 1;
  }
  if (!std::is_sorted(tree.leaf_set.begin(), tree.leaf_set.end())) return false;
  for (NodeId u : tree.leaf_set) {
    if (u >= n || is_leaf[u] || is_intermediate[u]) return false;
    is_leaf[u] = 1;
  }
  if (!is_intermediate[tree.root]) return false;

  int max_level = 0;
  std::size_t child_links = 0;
  for (NodeId v = 0; v < n; ++v) {
    const bool alive = graph.nodes[v].alive;
    const bool spanned = is_intermediate[v] || is_leaf[v];
    if (alive != spanned) return false;
    if (!alive) {
      if (tree.level[v] != -1 || tree.predecessor[v] != kNoNode || !tree.children[v].empty()) {
        return false;
      }
      continue;
    }

    const auto& kids = tree.children[v];
    if (!std::is_sorted(kids.begin(), kids.end())) return false;
    for (NodeId c : kids) {
      if (c >= n || tree.predecessor[c] != v) return false;
    }
    child_links += kids.size();
    if (!kids.empty() && !is_intermediate[v]) return false;
    if (is_leaf[v] && !kids.empty()) return false;

    max_level = std::max(max_level, tree.level[v]);
    if (v == tree.root) continue;
    const NodeId p = tree.predecessor[v];
    if (p >= n || !adjacent(v, p)) return false;
    if (tree.level[v] != tree.level[p] + 1) return false;
    if (!std::binary_search(tree.children[p].begin(), tree.children[p].end(), v)) return false;
    if (is_intermediate[v] && !is_intermediate[p]) return false;
  }
  if (child_links + 1 != tree.spanned_count()) return false;
  if (tree.height != max_level) return false;

  // nodes_at_level lists each spanned node exactly once, at its level.
  if (tree.nodes_at_level.size() != static_cast<std::size_t>(tree.height) + 1) return false;
  std::vector<char> listed(n, 0);
  for (std::size_t lvl = 0; lvl < tree.nodes_at_level.size(); ++lvl) {
    for (NodeId u : tree.nodes_at_level[lvl]) {
      if (u >= n || listed[u] || tree.level[u] != static_cast<int>(lvl)) return false;
      listed[u] = 1;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (graph.nodes[v].alive && !listed[v]) return false;
  }

  // Domination by the intermediate set.
  for (NodeId v = 0; v < n; ++v) {
    if (!graph.nodes[v].alive || is_intermediate[v]) continue;
    const auto& adj = graph.adjacency[v];
    if (std::none_of(adj.begin(), adj.end(), [&](NodeId u) { return is_intermediate[u]; })) {
      return false;
    }
  }
  return true;
}

void dump_tree(std::ostream& out, const GatherTree& tree) {
  for (NodeId v = 0; v < tree.size(); ++v) {
    const NodeRole r = tree.role(v);
    if (r == NodeRole::absent) continue;
    out << v << ' ' << tree.level[v] << ' ';
    if (tree.predecessor[v] == kNoNode) {
      out << '-';
    } else {
      out << tree.predecessor[v];
    }
    out << ' '
        << (r == NodeRole::root ? "root" : r == NodeRole::intermediate ? "intermediate" : "leaf")
        << '\n';
  }
}

}  // namespace emln
