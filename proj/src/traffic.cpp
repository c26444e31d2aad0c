#include "te/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "te/rng.hpp"

namespace te {

std::string to_string(TmModel model) {
  switch (model) {
    case TmModel::GRAVITY:
      return "GRAVITY";
    case TmModel::BIMODAL:
      return "BIMODAL";
    case TmModel::LOGNORMAL:
      return "LOGNORMAL";
  }
  return "?";
}

TmModel tm_model_from_string(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up == "GRAVITY") return TmModel::GRAVITY;
  if (up == "BIMODAL") return TmModel::BIMODAL;
  if (up == "LOGNORMAL") return TmModel::LOGNORMAL;
  throw ValidationError("unknown traffic matrix model '" + name + "'");
}

double TrafficMatrix::total_volume() const {
  double total = 0.0;
  for (const Demand& d : demands) total += d.volume;
  return total;
}

namespace {

TrafficMatrix empty_matrix(const Topology& topo, TmModel model) {
  TrafficMatrix tm;
  tm.model = model;
  tm.demands.reserve(static_cast<size_t>(topo.n) * (topo.n - 1));
  for (NodeId s = 0; s < topo.n; ++s)
    for (NodeId t = 0; t < topo.n; ++t)
      if (s != t) tm.demands.push_back(Demand{s, t, 0.0});
  return tm;
}

void require_capacities(const Topology& topo) {
  for (const Link& l : topo.links)
    if (l.capacity <= 0.0)
      throw std::invalid_argument("capacities must be assigned first");
}

}  // namespace

TrafficMatrix gravity_tm(const Topology& topo, uint64_t seed) {
  (void)seed;
  require_capacities(topo);
  std::vector<double> mass(topo.n, 0.0);
  for (const Link& l : topo.links) {
    mass[l.src] += l.capacity;
    mass[l.dst] += l.capacity;
  }
  double total_mass = std::accumulate(mass.begin(), mass.end(), 0.0);

  TrafficMatrix tm = empty_matrix(topo, TmModel::GRAVITY);
  for (Demand& d : tm.demands) {
    double denom = total_mass - mass[d.src];
    d.volume = mass[d.src] * mass[d.dst] / denom;
  }
  return tm;
}

TrafficMatrix bimodal_tm(const Topology& topo, uint64_t seed,
                         double large_fraction,
                         std::pair<double, double> small_range,
                         std::pair<double, double> large_range) {
  if (large_fraction < 0.0 || large_fraction > 1.0)
    throw std::invalid_argument("large_fraction must lie in [0, 1]");
  if (small_range.first < 0.0 || small_range.first > small_range.second)
    throw std::invalid_argument("invalid small_range");
  if (large_range.first < 0.0 || large_range.first > large_range.second)
    throw std::invalid_argument("invalid large_range");

  TrafficMatrix tm = empty_matrix(topo, TmModel::BIMODAL);
  const size_t pairs = tm.demands.size();
  const size_t large_count = static_cast<size_t>(
      std::ceil(large_fraction * static_cast<double>(pairs)));

  Rng rng(seed);
  std::vector<size_t> order(pairs);
  std::iota(order.begin(), order.end(), 0);
  std::vector<char> is_large(pairs, 0);
  for (size_t i = 0; i < large_count && i < pairs; ++i) {
    size_t j = i + rng.uniform_int(pairs - i);
    std::swap(order[i], order[j]);
    is_large[order[i]] = 1;
  }
  for (size_t i = 0; i < pairs; ++i) {
    const auto& range = is_large[i] ? large_range : small_range;
    tm.demands[i].volume = rng.uniform(range.first, range.second);
  }
  return tm;
}

TrafficMatrix lognormal_tm(const Topology& topo, uint64_t seed, double mu,
                           double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
  TrafficMatrix tm = empty_matrix(topo, TmModel::LOGNORMAL);
  Rng rng(seed);
  for (Demand& d : tm.demands) d.volume = rng.lognormal(mu, sigma);
  return tm;
}

TrafficMatrix scale_to_max_utilization(const TrafficMatrix& tm,
                                       const Topology& topo, double max_u) {
  if (max_u <= 0.0 || max_u > 1.0)
    throw std::invalid_argument("max_u must lie in (0, 1]");
  std::vector<double> load(topo.links.size(), 0.0);
  bool any_volume = false;
  for (const Demand& d : tm.demands) {
    if (d.volume <= 0.0) continue;
    any_volume = true;
    Path shortest = k_shortest_paths(topo, d.src, d.dst, 1).front();
    for (int li : shortest.link_ids) load[li] += d.volume;
  }
  if (!any_volume) throw DegenerateMatrix("all demand volumes are zero");

  double peak = 0.0;
  for (size_t i = 0; i < load.size(); ++i)
    peak = std::max(peak, load[i] / topo.links[i].capacity);

  double factor = max_u / peak;
  TrafficMatrix scaled = tm;
  for (Demand& d : scaled.demands) d.volume *= factor;
  return scaled;
}

}  // namespace te
