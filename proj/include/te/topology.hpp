#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "te/errors.hpp"

namespace te {

using NodeId = int;

// Directed link with its configured capacity and routing weight. Links come
// in symmetric pairs: (u,v) exists iff (v,u) exists, with equal capacity and
// weight.
struct Link {
  NodeId src = 0;
  NodeId dst = 0;
  double capacity = 0.0;
  double weight = 0.0;
};

// An undirected node pair, normalized so first < second.
using NodePair = std::pair<NodeId, NodeId>;

struct Topology {
  int n = 0;
  int link_pairs = 0;
  std::vector<Link> links;                    // sorted by (src, dst)
  std::vector<std::vector<int>> out_links;    // node -> indices into links

  // Index of the directed link src->dst, or -1.
  int link_index(NodeId src, NodeId dst) const;
  double total_capacity() const;
};

struct Path {
  std::vector<NodeId> nodes;
  std::vector<int> link_ids;  // indices into Topology::links
  double total_weight = 0.0;
};

// Builds a topology from explicit undirected pairs (both directions are
// materialized). Capacities and weights start at zero. Rejects self-loops,
// duplicates, out-of-range nodes and disconnected graphs.
Topology make_topology(int n, const std::vector<NodePair>& pairs);

// Samples a connected G(n, M) topology: exactly link_pairs undirected pairs
// drawn uniformly, re-drawn until connected or max_attempts is exhausted.
Topology generate_topology(int n, int link_pairs, uint64_t seed,
                           int max_attempts = 1000);

// Edge betweenness per undirected pair: shortest-path (hop count) traversal
// counts over all ordered node pairs, with fractional attribution among
// equal-length paths (Brandes accumulation). Run before capacities exist.
std::map<NodePair, double> edge_betweenness(const Topology& topo);

// Distributes capacity_set (strictly increasing) over links: pairs ranked by
// betweenness ascending, split into contiguous near-equal rank groups, group
// i gets capacity_set[i]. Ranking ties break on the (min,max) pair id.
Topology assign_capacities(const Topology& topo,
                           const std::vector<double>& capacity_set);

// setting must be "INV_CAP": weight = 1 / capacity.
Topology assign_weights(const Topology& topo, const std::string& setting);

// Yen's algorithm: up to k loopless paths ordered by (total weight, node
// sequence). The k-path result is always a prefix of the k'-path result for
// k' > k.
std::vector<Path> k_shortest_paths(const Topology& topo, NodeId src,
                                   NodeId dst, int k);

double avg_nodal_degree(const Topology& topo);

bool is_connected(const Topology& topo);

}  // namespace te
