#pragma once

#include <string>
#include <vector>

#include "te/lp.hpp"
#include "te/topology.hpp"
#include "te/traffic.hpp"

namespace te {

enum class Objective { MCR, LB, AD };
enum class RoutingStrategy { MULTIPATH, SINGLEPATH };

std::string to_string(Objective obj);
std::string to_string(RoutingStrategy strategy);
Objective objective_from_string(const std::string& name);
RoutingStrategy strategy_from_string(const std::string& name);

// Candidate paths per demand, aligned with TrafficMatrix::demands, each list
// ordered shortest-first exactly as k_shortest_paths returns them.
struct CandidatePathSet {
  int k = 0;
  std::vector<std::vector<Path>> per_demand;

  int max_paths() const;
};

struct FlowAllocation {
  std::vector<std::vector<double>> flow;  // [demand][path index]
  double objective_value = 0.0;
  Objective objective = Objective::MCR;
  RoutingStrategy strategy = RoutingStrategy::MULTIPATH;
};

struct LinkLoad {
  double load = 0.0;
  double utilization = 0.0;
  double residual = 0.0;
};

// Per-link metrics aligned with Topology::links.
struct LinkLoadVector {
  std::vector<LinkLoad> per_link;
};

struct DecodedSolution {
  FlowAllocation alloc;
  LinkLoadVector loads;
};

CandidatePathSet build_candidate_paths(const Topology& topo,
                                       const TrafficMatrix& tm, int k);

// Minimum cost routing: min sum of path-cost-weighted flows subject to
// demand satisfaction and link capacities. Path cost is the path's total
// routing weight.
LpModel build_mcr(const CandidatePathSet& paths, const TrafficMatrix& tm,
                  const Topology& topo);

// Load balancing: min r with per-link load <= capacity * r.
LpModel build_lb(const CandidatePathSet& paths, const TrafficMatrix& tm,
                 const Topology& topo);

// Average delay: min sum r_l / c_l where r_l is bounded below by the six
// affine pieces of the delay approximation applied to the link load.
LpModel build_ad(const CandidatePathSet& paths, const TrafficMatrix& tm,
                 const Topology& topo);

// Piecewise linear delay approximation g(z) for capacity-normalized load z,
// evaluated as the max of its six affine pieces.
double pla_delay(double z);

// Single-path transform: one binary per (demand, path), flow forced onto
// exactly one chosen path per demand.
LpModel apply_single_path(LpModel model, const CandidatePathSet& paths,
                          const TrafficMatrix& tm);

DecodedSolution decode_solution(const LpSolution& sol,
                                const CandidatePathSet& paths,
                                const TrafficMatrix& tm, const Topology& topo,
                                Objective objective,
                                RoutingStrategy strategy);

// Aggregated flow per path index: entry i sums every demand's flow on its
// (i+1)-th shortest candidate path.
std::vector<double> flow_agg_per_path(const FlowAllocation& alloc);

// Percentage of total capacity left unused.
double residual_capacity_pct(const LinkLoadVector& links);

}  // namespace te
