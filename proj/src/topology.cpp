#include "te/topology.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <set>

#include "te/rng.hpp"

namespace te {

int Topology::link_index(NodeId src, NodeId dst) const {
  Link probe{src, dst, 0.0, 0.0};
  auto it = std::lower_bound(links.begin(), links.end(), probe,
                             [](const Link& a, const Link& b) {
                               return std::pair(a.src, a.dst) <
                                      std::pair(b.src, b.dst);
                             });
  if (it == links.end() || it->src != src || it->dst != dst) return -1;
  return static_cast<int>(it - links.begin());
}

double Topology::total_capacity() const {
  double total = 0.0;
  for (const Link& l : links) total += l.capacity;
  return total;
}

namespace {

Topology build_from_pairs(int n, std::vector<NodePair> pairs) {
  std::sort(pairs.begin(), pairs.end());
  Topology topo;
  topo.n = n;
  topo.link_pairs = static_cast<int>(pairs.size());
  topo.links.reserve(pairs.size() * 2);
  for (const auto& [u, v] : pairs) {
    topo.links.push_back(Link{u, v, 0.0, 0.0});
    topo.links.push_back(Link{v, u, 0.0, 0.0});
  }
  std::sort(topo.links.begin(), topo.links.end(),
            [](const Link& a, const Link& b) {
              return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
            });
  topo.out_links.assign(n, {});
  for (int i = 0; i < static_cast<int>(topo.links.size()); ++i) {
    topo.out_links[topo.links[i].src].push_back(i);
  }
  return topo;
}

bool pairs_connected(int n, const std::vector<NodePair>& pairs) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : pairs) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  return reached == n;
}

}  // namespace

bool is_connected(const Topology& topo) {
  if (topo.n == 0) return false;
  std::vector<char> seen(topo.n, 0);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    for (int li : topo.out_links[u]) {
      NodeId v = topo.links[li].dst;
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  return reached == topo.n;
}

Topology make_topology(int n, const std::vector<NodePair>& pairs) {
  if (n < 2) throw InvalidSize("topology needs at least 2 nodes");
  std::set<NodePair> normalized;
  for (auto [u, v] : pairs) {
    if (u == v) throw InvalidSize("self-loop pair");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InvalidSize("pair endpoint out of range");
    if (u > v) std::swap(u, v);
    if (!normalized.insert({u, v}).second)
      throw InvalidSize("duplicate pair");
  }
  std::vector<NodePair> canon(normalized.begin(), normalized.end());
  if (!pairs_connected(n, canon))
    throw ConnectivityFailure("pair set is not connected");
  return build_from_pairs(n, canon);
}

Topology generate_topology(int n, int link_pairs, uint64_t seed,
                           int max_attempts) {
  if (n < 2) throw InvalidSize("node count must be at least 2");
  long max_pairs = static_cast<long>(n) * (n - 1) / 2;
  if (link_pairs < n - 1 || link_pairs > max_pairs)
    throw InvalidSize("link_pairs " + std::to_string(link_pairs) +
                      " outside [" + std::to_string(n - 1) + ", " +
                      std::to_string(max_pairs) + "] for n=" +
                      std::to_string(n));
  if (max_attempts < 1) throw InvalidSize("max_attempts must be positive");

  std::vector<NodePair> all_pairs;
  all_pairs.reserve(max_pairs);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);

  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // Partial Fisher-Yates: the first link_pairs entries are a uniform
    // sample of pair sets of that size.
    for (int i = 0; i < link_pairs; ++i) {
      uint64_t j = i + rng.uniform_int(all_pairs.size() - i);
      std::swap(all_pairs[i], all_pairs[j]);
    }
    std::vector<NodePair> chosen(all_pairs.begin(),
                                 all_pairs.begin() + link_pairs);
    if (pairs_connected(n, chosen)) return build_from_pairs(n, chosen);
  }
  throw ConnectivityFailure("no connected sample in " +
                            std::to_string(max_attempts) + " attempts");
}

std::map<NodePair, double> edge_betweenness(const Topology& topo) {
  const int n = topo.n;
  // Brandes accumulation on the unweighted directed graph; per-source BFS,
  // dependencies pushed backwards along shortest-path DAG edges.
  std::vector<double> directed_score(topo.links.size(), 0.0);
  std::vector<int> dist(n), order;
  std::vector<double> sigma(n), delta(n);
  order.reserve(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      order.push_back(u);
      for (int li : topo.out_links[u]) {
        int v = topo.links[li].dst;
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
        if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int u = *it;
      for (int li : topo.out_links[u]) {
        int v = topo.links[li].dst;
        if (dist[v] == dist[u] + 1) {
          double c = sigma[u] / sigma[v] * (1.0 + delta[v]);
          directed_score[li] += c;
          delta[u] += c;
        }
      }
    }
  }
  std::map<NodePair, double> result;
  for (size_t i = 0; i < topo.links.size(); ++i) {
    const Link& l = topo.links[i];
    NodePair pair{std::min(l.src, l.dst), std::max(l.src, l.dst)};
    result[pair] += directed_score[i];
  }
  return result;
}

Topology assign_capacities(const Topology& topo,
                           const std::vector<double>& capacity_set) {
  if (capacity_set.empty())
    throw std::invalid_argument("capacity_set is empty");
  for (size_t i = 0; i < capacity_set.size(); ++i) {
    if (capacity_set[i] <= 0.0)
      throw std::invalid_argument("capacity_set values must be positive");
    if (i > 0 && capacity_set[i] <= capacity_set[i - 1])
      throw std::invalid_argument("capacity_set must be strictly increasing");
  }

  auto betweenness = edge_betweenness(topo);
  std::vector<std::pair<double, NodePair>> ranked;
  ranked.reserve(betweenness.size());
  for (const auto& [pair, score] : betweenness) ranked.emplace_back(score, pair);
  std::sort(ranked.begin(), ranked.end());  // score asc, then pair id asc

  // Contiguous rank groups of near-equal size; the remainder widens the
  // lowest-betweenness groups.
  const int pairs = static_cast<int>(ranked.size());
  const int groups = static_cast<int>(capacity_set.size());
  const int base = pairs / groups;
  const int rem = pairs % groups;
  std::map<NodePair, double> capacity_of;
  int at = 0;
  for (int g = 0; g < groups; ++g) {
    int size = base + (g < rem ? 1 : 0);
    for (int i = 0; i < size; ++i) capacity_of[ranked[at++].second] = capacity_set[g];
  }

  Topology out = topo;
  for (Link& l : out.links) {
    NodePair pair{std::min(l.src, l.dst), std::max(l.src, l.dst)};
    l.capacity = capacity_of.at(pair);
  }
  return out;
}

Topology assign_weights(const Topology& topo, const std::string& setting) {
  if (setting != "INV_CAP")
    throw UnsupportedSetting("unsupported weight setting '" + setting + "'");
  Topology out = topo;
  for (Link& l : out.links) {
    if (l.capacity <= 0.0)
      throw std::invalid_argument("capacities must be assigned before weights");
    l.weight = 1.0 / l.capacity;
  }
  return out;
}

namespace {

struct LexPath {
  double weight = 0.0;
  std::vector<NodeId> nodes;
};

bool lex_less(const LexPath& a, const LexPath& b) {
  if (a.weight != b.weight) return a.weight < b.weight;
  return a.nodes < b.nodes;
}

// Dijkstra that settles nodes in (distance, node-sequence) order so that
// among equal-weight shortest paths the lexicographically smallest node
// sequence wins. Desk-scale graphs, so paths ride in the heap directly.
std::optional<LexPath> dijkstra_lex(const Topology& topo, NodeId src,
                                    NodeId dst,
                                    const std::vector<char>& node_banned,
                                    const std::vector<char>& link_banned) {
  auto cmp = [](const LexPath& a, const LexPath& b) { return lex_less(b, a); };
  std::priority_queue<LexPath, std::vector<LexPath>, decltype(cmp)> heap(cmp);
  std::vector<char> settled(topo.n, 0);
  heap.push(LexPath{0.0, {src}});
  while (!heap.empty()) {
    LexPath cur = heap.top();
    heap.pop();
    NodeId u = cur.nodes.back();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == dst) return cur;
    for (int li : topo.out_links[u]) {
      if (link_banned[li]) continue;
      const Link& l = topo.links[li];
      if (settled[l.dst] || node_banned[l.dst]) continue;
      LexPath next{cur.weight + l.weight, cur.nodes};
      next.nodes.push_back(l.dst);
      heap.push(std::move(next));
    }
  }
  return std::nullopt;
}

// Path weight recomputed as a left-to-right fold so equal node sequences
// always produce bit-identical weights regardless of how they were found.
Path materialize(const Topology& topo, const std::vector<NodeId>& nodes) {
  Path p;
  p.nodes = nodes;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    int li = topo.link_index(nodes[i], nodes[i + 1]);
    p.link_ids.push_back(li);
    p.total_weight += topo.links[li].weight;
  }
  return p;
}

}  // namespace

std::vector<Path> k_shortest_paths(const Topology& topo, NodeId src,
                                   NodeId dst, int k) {
  if (src == dst) throw std::invalid_argument("src and dst must differ");
  if (k < 1) throw std::invalid_argument("k must be positive");
  for (const Link& l : topo.links)
    if (l.weight <= 0.0)
      throw std::invalid_argument("weights must be assigned before routing");

  std::vector<char> no_nodes(topo.n, 0), no_links(topo.links.size(), 0);
  auto first = dijkstra_lex(topo, src, dst, no_nodes, no_links);
  if (!first) throw NoPath("destination unreachable");

  auto canonical = [&](const std::vector<NodeId>& nodes) {
    LexPath p;
    p.nodes = nodes;
    for (size_t i = 0; i + 1 < nodes.size(); ++i)
      p.weight += topo.links[topo.link_index(nodes[i], nodes[i + 1])].weight;
    return p;
  };

  std::vector<LexPath> accepted{canonical(first->nodes)};
  auto cmp = [](const LexPath& a, const LexPath& b) { return lex_less(a, b); };
  std::set<LexPath, decltype(cmp)> candidates(cmp);

  while (static_cast<int>(accepted.size()) < k) {
    const LexPath& prev = accepted.back();
    for (size_t spur_idx = 0; spur_idx + 1 < prev.nodes.size(); ++spur_idx) {
      NodeId spur = prev.nodes[spur_idx];
      std::vector<char> node_banned(topo.n, 0);
      std::vector<char> link_banned(topo.links.size(), 0);
      for (size_t i = 0; i < spur_idx; ++i) node_banned[prev.nodes[i]] = 1;
      // Deviations must not retrace any accepted path sharing this root.
      for (const LexPath& a : accepted) {
        if (a.nodes.size() <= spur_idx + 1) continue;
        if (!std::equal(a.nodes.begin(), a.nodes.begin() + spur_idx + 1,
                        prev.nodes.begin()))
          continue;
        int li = topo.link_index(a.nodes[spur_idx], a.nodes[spur_idx + 1]);
        if (li >= 0) link_banned[li] = 1;
      }
      auto spur_path = dijkstra_lex(topo, spur, dst, node_banned, link_banned);
      if (!spur_path) continue;
      std::vector<NodeId> full(prev.nodes.begin(),
                               prev.nodes.begin() + spur_idx);
      full.insert(full.end(), spur_path->nodes.begin(),
                  spur_path->nodes.end());
      candidates.insert(canonical(full));
    }
    if (candidates.empty()) break;
    accepted.push_back(*candidates.begin());
    candidates.erase(candidates.begin());
  }

  std::vector<Path> result;
  result.reserve(accepted.size());
  for (const LexPath& p : accepted) result.push_back(materialize(topo, p.nodes));
  return result;
}

double avg_nodal_degree(const Topology& topo) {
  return 2.0 * topo.link_pairs / topo.n;
}

}  // namespace te
