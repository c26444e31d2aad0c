#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "te/topology.hpp"

namespace te {

enum class TmModel { GRAVITY, BIMODAL, LOGNORMAL };

std::string to_string(TmModel model);
TmModel tm_model_from_string(const std::string& name);

struct Demand {
  NodeId src = 0;
  NodeId dst = 0;
  double volume = 0.0;
};

// Complete static traffic matrix: one demand per ordered node pair,
// enumerated source-major.
struct TrafficMatrix {
  std::vector<Demand> demands;
  TmModel model = TmModel::GRAVITY;

  double total_volume() const;
};

// Capacity-based gravity heuristic: volume(s,t) proportional to the product
// of the endpoints' combined incident capacity. Deterministic; the seed is
// accepted only for interface uniformity with the other models.
TrafficMatrix gravity_tm(const Topology& topo, uint64_t seed);

// A few ordered pairs get large uniform volumes, the rest small ones.
TrafficMatrix bimodal_tm(const Topology& topo, uint64_t seed,
                         double large_fraction = 0.1,
                         std::pair<double, double> small_range = {1.0, 10.0},
                         std::pair<double, double> large_range = {50.0,
                                                                  100.0});

// I.i.d. LogNormal(mu, sigma) volume per ordered pair.
TrafficMatrix lognormal_tm(const Topology& topo, uint64_t seed,
                           double mu = 1.0, double sigma = 1.0);

// Scales the matrix so that routing every demand wholly on its first
// shortest path yields a maximum link utilization of exactly max_u.
TrafficMatrix scale_to_max_utilization(const TrafficMatrix& tm,
                                       const Topology& topo, double max_u);

}  // namespace te
