#include "te/topology.hpp"

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "test_oracles.hpp"

using namespace te;

namespace {

Topology with_unit_weights(Topology topo) {
  topo = assign_capacities(topo, {1.0});
  return assign_weights(topo, "INV_CAP");
}

Topology configured(int n, int l, uint64_t seed) {
  Topology topo = generate_topology(n, l, seed);
  topo = assign_capacities(topo, {30.0, 35.0, 40.0});
  return assign_weights(topo, "INV_CAP");
}

std::vector<NodePair> undirected_pairs(const Topology& topo) {
  std::vector<NodePair> pairs;
  for (const Link& l : topo.links)
    if (l.src < l.dst) pairs.push_back({l.src, l.dst});
  return pairs;
}

}  // namespace

TEST_CASE("two-node topology has exactly the one possible pair") {
  Topology topo = generate_topology(2, 1, 42);
  REQUIRE(topo.links.size() == 2);
  CHECK(topo.links[0].src == 0);
  CHECK(topo.links[0].dst == 1);
  CHECK(topo.links[1].src == 1);
  CHECK(topo.links[1].dst == 0);
}

TEST_CASE("link pair count outside the simple-graph bound is rejected") {
  CHECK_THROWS_AS(generate_topology(5, 20, 1), InvalidSize);
  CHECK_THROWS_AS(generate_topology(5, 3, 1), InvalidSize);  // below n-1
  CHECK_THROWS_AS(generate_topology(1, 0, 1), InvalidSize);
}

TEST_CASE("n=4 l=3 samples are spanning trees at the enumerated success rate") {
  // Oracle: enumerate all C(6,3)=20 three-pair subsets of the 4-node pair
  // universe and count the connected ones.
  std::vector<NodePair> universe;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) universe.push_back({u, v});
  REQUIRE(universe.size() == 6);
  int total = 0, connected = 0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b)
      for (int c = b + 1; c < 6; ++c) {
        ++total;
        if (oracle::pairs_connected(4, {universe[a], universe[b], universe[c]}))
          ++connected;
      }
  CHECK(total == 20);
  CHECK(connected == 16);

  // Success probability of a single attempt matches 16/20 within 3 standard
  // errors over 1000 seeds.
  const int trials = 1000;
  int successes = 0;
  for (int seed = 0; seed < trials; ++seed) {
    try {
      Topology topo = generate_topology(4, 3, seed, 1);
      ++successes;
      CHECK(topo.link_pairs == 3);
      CHECK(is_connected(topo));  // three pairs + connected = spanning tree
    } catch (const ConnectivityFailure&) {
    }
  }
  double p = static_cast<double>(connected) / total;
  double se = std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(successes / static_cast<double>(trials) - p) <= 3 * se);
}

TEST_CASE("a failing seed reports ConnectivityFailure when attempts run out") {
  bool found = false;
  for (int seed = 0; seed < 50 && !found; ++seed) {
    try {
      generate_topology(4, 3, seed, 1);
    } catch (const ConnectivityFailure&) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("generation is deterministic and symmetric") {
  for (uint64_t seed : {7u, 8u, 9u}) {
    Topology a = configured(8, 12, seed);
    Topology b = configured(8, 12, seed);
    REQUIRE(a.links.size() == b.links.size());
    for (size_t i = 0; i < a.links.size(); ++i) {
      CHECK(a.links[i].src == b.links[i].src);
      CHECK(a.links[i].dst == b.links[i].dst);
      CHECK(a.links[i].capacity == b.links[i].capacity);
      CHECK(a.links[i].weight == b.links[i].weight);
    }
    // Every link's reverse exists with identical configuration.
    for (const Link& l : a.links) {
      int rev = a.link_index(l.dst, l.src);
      REQUIRE(rev >= 0);
      CHECK(a.links[rev].capacity == l.capacity);
      CHECK(a.links[rev].weight == l.weight);
    }
    CHECK(is_connected(a));
  }
}

TEST_CASE("betweenness on the 3-node path counts all ordered crossings") {
  Topology topo = make_topology(3, {{0, 1}, {1, 2}});
  auto scores = edge_betweenness(topo);
  auto expected = oracle::betweenness_by_enumeration(topo);
  for (const auto& [pair, score] : expected)
    CHECK(scores.at(pair) == doctest::Approx(score));
  // Frozen from the enumeration: 4 ordered pairs cross each link pair.
  CHECK(scores.at({0, 1}) == doctest::Approx(4.0));
  CHECK(scores.at({1, 2}) == doctest::Approx(4.0));
}

TEST_CASE("star spokes share one betweenness value") {
  Topology topo = make_topology(4, {{0, 1}, {0, 2}, {0, 3}});  // hub 0
  auto scores = edge_betweenness(topo);
  CHECK(scores.at({0, 1}) == doctest::Approx(scores.at({0, 2})));
  CHECK(scores.at({0, 2}) == doctest::Approx(scores.at({0, 3})));
}

TEST_CASE("triangle links carry only their endpoints' demands") {
  Topology topo = make_topology(3, {{0, 1}, {1, 2}, {0, 2}});
  auto scores = edge_betweenness(topo);
  auto expected = oracle::betweenness_by_enumeration(topo);
  for (const auto& [pair, score] : expected)
    CHECK(scores.at(pair) == doctest::Approx(score));
  CHECK(scores.at({0, 1}) == doctest::Approx(2.0));
  CHECK(scores.at({1, 2}) == doctest::Approx(2.0));
  CHECK(scores.at({0, 2}) == doctest::Approx(2.0));
}

TEST_CASE("betweenness matches exhaustive enumeration on random samples") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    Topology topo = generate_topology(7, 10, seed);
    auto scores = edge_betweenness(topo);
    auto expected = oracle::betweenness_by_enumeration(topo);
    REQUIRE(scores.size() == expected.size());
    for (const auto& [pair, score] : expected)
      CHECK(scores.at(pair) == doctest::Approx(score).epsilon(1e-9));
  }
}

TEST_CASE("the cut link of the example four-node topology gets the top capacity") {
  // Node 2 hangs off node 3; nodes 0, 1, 3 form a triangle. The (2,3) link
  // is the only way in or out of node 2, so it must rank highest.
  Topology topo = make_topology(4, {{0, 1}, {0, 3}, {1, 3}, {2, 3}});
  topo = assign_capacities(topo, {30.0, 35.0, 40.0});
  int li = topo.link_index(2, 3);
  REQUIRE(li >= 0);
  CHECK(topo.links[li].capacity == 40.0);
  int rev = topo.link_index(3, 2);
  CHECK(topo.links[rev].capacity == 40.0);
}

TEST_CASE("single-element capacity set configures every link") {
  Topology topo = generate_topology(6, 9, 11);
  topo = assign_capacities(topo, {50.0});
  for (const Link& l : topo.links) CHECK(l.capacity == 50.0);
}

TEST_CASE("betweenness ties split by pair id") {
  Topology topo = make_topology(3, {{0, 1}, {1, 2}});
  topo = assign_capacities(topo, {30.0, 40.0});
  CHECK(topo.links[topo.link_index(0, 1)].capacity == 30.0);
  CHECK(topo.links[topo.link_index(1, 2)].capacity == 40.0);
}

TEST_CASE("INV_CAP weights are reciprocal capacities") {
  Topology topo = generate_topology(6, 9, 3);
  topo = assign_capacities(topo, {30.0, 35.0, 40.0});
  CHECK_THROWS_AS(assign_weights(topo, "UNIT"), UnsupportedSetting);
  topo = assign_weights(topo, "INV_CAP");
  for (const Link& l : topo.links) {
    CHECK(l.weight == doctest::Approx(1.0 / l.capacity));
    if (l.capacity == 40.0) CHECK(l.weight == doctest::Approx(0.025));
  }
  // Higher capacity always means strictly lower weight.
  for (const Link& a : topo.links)
    for (const Link& b : topo.links)
      if (a.capacity < b.capacity) CHECK(a.weight > b.weight);
}

TEST_CASE("k shortest paths on the unit triangle") {
  Topology topo =
      with_unit_weights(make_topology(3, {{0, 1}, {1, 2}, {0, 2}}));
  auto paths = k_shortest_paths(topo, 0, 2, 2);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<NodeId>{0, 2});
  CHECK(paths[0].total_weight == doctest::Approx(1.0));
  CHECK(paths[1].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(paths[1].total_weight == doctest::Approx(2.0));
}

TEST_CASE("path budget larger than the loopless path count is not padded") {
  Topology topo = with_unit_weights(make_topology(2, {{0, 1}}));
  auto paths = k_shortest_paths(topo, 0, 1, 3);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].nodes == std::vector<NodeId>{0, 1});
}

TEST_CASE("complete four-node graph against exhaustive enumeration") {
  Topology topo = with_unit_weights(
      make_topology(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  auto paths = k_shortest_paths(topo, 0, 3, 5);
  REQUIRE(paths.size() == 5);
  std::vector<double> weights;
  for (const Path& p : paths) weights.push_back(p.total_weight);
  CHECK(weights == std::vector<double>{1.0, 2.0, 2.0, 3.0, 3.0});

  // Oracle: all loopless paths ordered by (weight, node sequence).
  auto all = oracle::all_loopless_paths(topo, 0, 3);
  std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    double wa = oracle::path_weight(topo, a);
    double wb = oracle::path_weight(topo, b);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  for (size_t i = 0; i < paths.size(); ++i) CHECK(paths[i].nodes == all[i]);
}

TEST_CASE("equal-weight paths order lexicographically") {
  Topology topo = with_unit_weights(
      make_topology(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  auto paths = k_shortest_paths(topo, 0, 3, 5);
  CHECK(paths[1].nodes == std::vector<NodeId>{0, 1, 3});
  CHECK(paths[2].nodes == std::vector<NodeId>{0, 2, 3});
  CHECK(paths[3].nodes == std::vector<NodeId>{0, 1, 2, 3});
  CHECK(paths[4].nodes == std::vector<NodeId>{0, 2, 1, 3});
}

TEST_CASE("k-shortest results are prefixes of larger budgets") {
  for (uint64_t seed : {5u, 6u, 7u}) {
    Topology topo = configured(7, 12, seed);
    for (NodeId t = 1; t < topo.n; ++t) {
      auto small = k_shortest_paths(topo, 0, t, 3);
      auto large = k_shortest_paths(topo, 0, t, 6);
      REQUIRE(small.size() <= large.size());
      for (size_t i = 0; i < small.size(); ++i)
        CHECK(small[i].nodes == large[i].nodes);
      for (size_t i = 1; i < large.size(); ++i)
        CHECK(large[i].total_weight >= large[i - 1].total_weight - 1e-12);
      // Loopless and well-formed.
      for (const Path& p : large) {
        std::vector<NodeId> sorted = p.nodes;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        double w = 0.0;
        for (int li : p.link_ids) w += topo.links[li].weight;
        CHECK(p.total_weight == doctest::Approx(w));
      }
    }
  }
}

TEST_CASE("average nodal degree") {
  CHECK(avg_nodal_degree(generate_topology(4, 3, 1)) == doctest::Approx(1.5));
  // 25 nodes with 100 link pairs: nodal degree 8.
  CHECK(avg_nodal_degree(generate_topology(25, 100, 1)) ==
        doctest::Approx(8.0));
  Topology complete5 = generate_topology(5, 10, 1);
  CHECK(avg_nodal_degree(complete5) == doctest::Approx(4.0));
}

TEST_CASE("bridges carry every ordered pair their removal separates") {
  // A bridge is crossed by all shortest paths between the two components
  // its removal leaves, so its betweenness is exactly 2 * |A| * |B|.
  int bridges_seen = 0;
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Topology topo = generate_topology(10, 11, seed);
    auto scores = edge_betweenness(topo);
    auto pairs = undirected_pairs(topo);
    for (const NodePair& pair : pairs) {
      std::vector<NodePair> rest;
      for (const NodePair& other : pairs)
        if (other != pair) rest.push_back(other);
      if (oracle::pairs_connected(topo.n, rest)) continue;
      ++bridges_seen;
      // Size of the shore containing pair.first once the bridge is gone.
      std::vector<std::vector<int>> adj(topo.n);
      for (const auto& [u, v] : rest) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      std::vector<char> seen(topo.n, 0);
      std::vector<int> stack{pair.first};
      seen[pair.first] = 1;
      int shore = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
          if (!seen[v]) {
            seen[v] = 1;
            ++shore;
            stack.push_back(v);
          }
      }
      double expected = 2.0 * shore * (topo.n - shore);
      CHECK(scores.at(pair) == doctest::Approx(expected));
    }
  }
  CHECK(bridges_seen > 0);  // sparse samples must actually contain bridges
}

TEST_CASE("make_topology validates its input") {
  CHECK_THROWS_AS(make_topology(3, {{0, 0}}), InvalidSize);
  CHECK_THROWS_AS(make_topology(3, {{0, 3}}), InvalidSize);
  CHECK_THROWS_AS(make_topology(3, {{0, 1}, {1, 0}}), InvalidSize);
  CHECK_THROWS_AS(make_topology(4, {{0, 1}, {2, 3}}), ConnectivityFailure);
}
