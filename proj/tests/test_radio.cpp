#include "doctest.h"
#include "emln/gather_tree.hpp"
#include "emln/radio.hpp"
#include "oracles.hpp"

using namespace emln;
using doctest::Approx;

namespace {

const RadioParams kDefaults{};

std::vector<NodeState> at(std::vector<Point> points) {
  std::vector<NodeState> nodes;
  for (std::size_t i = 0; i < points.size(); ++i) nodes.push_back({i, points[i], 1.0, true});
  return nodes;
}

}  // namespace

TEST_CASE("transmit energy") {
  CHECK(tx_energy(kDefaults, 0, 123.0) == 0.0);
  CHECK(tx_energy(kDefaults, 2000, 25.0) == Approx(2.25e-4).epsilon(1e-12));
  CHECK(tx_energy(kDefaults, 2000, 250.0) == Approx(1.26e-2).epsilon(1e-12));
  CHECK_THROWS_AS(tx_energy(kDefaults, -1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tx_energy(kDefaults, 1, -1.0), std::invalid_argument);
}

TEST_CASE("receive energy") {
  CHECK(rx_energy(kDefaults, 0) == 0.0);
  CHECK(rx_energy(kDefaults, 2000) == Approx(1e-4).epsilon(1e-12));
  for (std::int64_t k : {0, 1, 7, 2000, 123456}) CHECK(rx_energy(kDefaults, k) == tx_energy(kDefaults, k, 0.0));
  CHECK_THROWS_AS(rx_energy(kDefaults, -5), std::invalid_argument);
}

TEST_CASE("fusion energy") {
  CHECK(fuse_energy(kDefaults, 2000, 0) == 0.0);
  CHECK(fuse_energy(kDefaults, 2000, 3) == Approx(3e-5).epsilon(1e-12));
  for (std::int64_t a = 0; a < 5; ++a) {
    for (std::int64_t b = 0; b < 5; ++b) {
      CHECK(fuse_energy(kDefaults, 2000, a + b) ==
            Approx(fuse_energy(kDefaults, 2000, a) + fuse_energy(kDefaults, 2000, b)));
    }
  }
  CHECK_THROWS_AS(fuse_energy(kDefaults, 2000, -1), std::invalid_argument);
  RadioParams no_fusion;
  no_fusion.e_fuse = 0.0;
  CHECK(fuse_energy(no_fusion, 2000, 9) == 0.0);
}

TEST_CASE("radio parameter validation") {
  CHECK_NOTHROW(kDefaults.validate());
  RadioParams p;
  p.packet_bits = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.eps_amp = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("single-node tree pays fusion and the sink hop") {
  const auto nodes = at({{0, 0}});
  const auto g = build_graph(nodes, 10.0);
  const auto t = construct_tree(g, 0);
  REQUIRE(t);
  const auto ledger = tree_round_energy(*t, nodes, {0, 250}, kDefaults);
  CHECK(ledger.debit(0) == Approx(fuse_energy(kDefaults, 2000, 1) + tx_energy(kDefaults, 2000, 250.0)));
  CHECK(ledger.rx(0) == 0.0);
}

TEST_CASE("star with two leaves") {
  // Root at (0,0), leaves 10 m away on opposite sides, sink 250 m above.
  const auto nodes = at({{0, 0}, {-10, 0}, {10, 0}});
  const auto t = oracle::tree_from_parents({kNoNode, 0, 0});
  const auto ledger = tree_round_energy(t, nodes, {0, 250}, kDefaults);
  CHECK(ledger.debit(1) == Approx(1.2e-4).epsilon(1e-12));
  CHECK(ledger.debit(2) == Approx(1.2e-4).epsilon(1e-12));
  CHECK(ledger.debit(0) == Approx(2 * 1e-4 + 3e-5 + 1.26e-2).epsilon(1e-12));
  CHECK(ledger.debit(0) == Approx(1.283e-2).epsilon(1e-12));
  CHECK(ledger.total() == Approx(1.283e-2 + 2.4e-4).epsilon(1e-12));

  RadioParams doubled;
  doubled.packet_bits = 4000;
  const auto twice = tree_round_energy(t, nodes, {0, 250}, doubled);
  for (NodeId v = 0; v < 3; ++v) CHECK(twice.debit(v) == Approx(2.0 * ledger.debit(v)).epsilon(1e-14));
}

TEST_CASE("tree/node mismatch is a usage error") {
  const auto t = oracle::tree_from_parents({kNoNode, 0, 0});
  CHECK_THROWS_AS(tree_round_energy(t, at({{0, 0}}), {0, 250}, kDefaults), std::invalid_argument);
}

TEST_CASE("tree ledgers on random deployments") {
  FieldConfig cfg;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto nodes = deploy(cfg, 1.0, s);
    const auto g = build_graph(nodes, 30.0);
    const auto t = construct_tree(g, s);
    if (!t) continue;
    const auto ledger = tree_round_energy(*t, nodes, cfg.sink, kDefaults);
    const auto hops = tree_transmissions(*t, nodes, cfg.sink);
    CHECK(hops.size() == t->spanned_count());
    CHECK(hops.back().from == t->root);
    CHECK(hops.back().to == kNoNode);
    CHECK(ledger.total() == Approx(oracle::expected_total(hops, nodes.size(), kDefaults, true)).epsilon(1e-12));

    for (NodeId leaf : t->leaf_set) {
      CHECK(ledger.rx(leaf) == 0.0);
      CHECK(ledger.fuse(leaf) == 0.0);
      // Pushing a leaf away from its parent raises its debit.
      auto moved = nodes;
      const Point parent = nodes[t->predecessor[leaf]].position;
      const Point self = nodes[leaf].position;
      moved[leaf].position = {parent.x + 2.0 * (self.x - parent.x), parent.y + 2.0 * (self.y - parent.y)};
      const auto farther = tree_round_energy(*t, moved, cfg.sink, kDefaults);
      CHECK(farther.debit(leaf) >= ledger.debit(leaf));
    }
    for (NodeId v : t->intermediate_set) {
      CHECK(ledger.fuse(v) == Approx(fuse_energy(kDefaults, 2000, static_cast<std::int64_t>(t->children[v].size()) + 1)));
    }
  }
}

TEST_CASE("ledger bookkeeping") {
  EnergyLedger ledger(3);
  charge_hop(ledger, {0, 1, 10.0}, kDefaults);
  charge_hop(ledger, {1, kNoNode, 250.0}, kDefaults);
  charge_fusion(ledger, 1, 1, kDefaults);
  CHECK(ledger.tx(0) == Approx(1.2e-4));
  CHECK(ledger.rx(1) == Approx(1e-4));
  CHECK(ledger.fuse(1) == Approx(2e-5));
  CHECK(ledger.debit(2) == 0.0);
  CHECK(ledger.total() == Approx(1.2e-4 + 1e-4 + 2e-5 + 1.26e-2));
  CHECK_THROWS(ledger.add_tx(3, 1.0));
}
