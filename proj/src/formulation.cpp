#include "te/formulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace te {

namespace {

constexpr double kFlowTol = 1e-6;

std::string x_name(int d, int p) {
  return "x_" + std::to_string(d) + "_" + std::to_string(p);
}
std::string u_name(int d, int p) {
  return "u_" + std::to_string(d) + "_" + std::to_string(p);
}

// The six supporting lines of the delay curve as (slope, capacity factor):
// r >= slope * y - factor * c.
constexpr std::array<std::pair<double, double>, 6> kPlaPieces = {{
    {1.5, 0.0},
    {4.5, 1.0},
    {15.0, 8.0},
    {50.0, 36.0},
    {200.0, 171.0},
    {4000.0, 3781.0},
}};

// Adds the flow variables and demand-satisfaction equalities shared by all
// three objectives, returning the variable ids as [demand][path].
std::vector<std::vector<int>> add_flow_block(LpModel* model,
                                             const CandidatePathSet& paths,
                                             const TrafficMatrix& tm) {
  std::vector<std::vector<int>> x(tm.demands.size());
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    x[d].reserve(paths.per_demand[d].size());
    for (size_t p = 0; p < paths.per_demand[d].size(); ++p)
      x[d].push_back(model->add_variable(x_name(d, p), 0.0, kInfinity));
  }
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    std::vector<LpTerm> terms;
    terms.reserve(x[d].size());
    for (int var : x[d]) terms.push_back({var, 1.0});
    model->add_constraint(std::move(terms), Relation::equal,
                          tm.demands[d].volume);
  }
  return x;
}

// Per-link lists of (flow variable, demand, path) triples.
std::vector<std::vector<LpTerm>> link_flow_terms(
    const std::vector<std::vector<int>>& x, const CandidatePathSet& paths,
    const Topology& topo) {
  std::vector<std::vector<LpTerm>> on_link(topo.links.size());
  for (size_t d = 0; d < paths.per_demand.size(); ++d)
    for (size_t p = 0; p < paths.per_demand[d].size(); ++p)
      for (int li : paths.per_demand[d][p].link_ids)
        on_link[li].push_back({x[d][p], 1.0});
  return on_link;
}

}  // namespace

std::string to_string(Objective obj) {
  switch (obj) {
    case Objective::MCR:
      return "MCR";
    case Objective::LB:
      return "LB";
    case Objective::AD:
      return "AD";
  }
  return "?";
}

std::string to_string(RoutingStrategy strategy) {
  return strategy == RoutingStrategy::MULTIPATH ? "MULTIPATH" : "SINGLEPATH";
}

Objective objective_from_string(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up == "MCR") return Objective::MCR;
  if (up == "LB") return Objective::LB;
  if (up == "AD") return Objective::AD;
  throw ValidationError("unknown objective '" + name + "'");
}

RoutingStrategy strategy_from_string(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), ::toupper);
  if (up == "MULTIPATH") return RoutingStrategy::MULTIPATH;
  if (up == "SINGLEPATH") return RoutingStrategy::SINGLEPATH;
  throw ValidationError("unknown routing strategy '" + name + "'");
}

int CandidatePathSet::max_paths() const {
  size_t widest = 0;
  for (const auto& list : per_demand) widest = std::max(widest, list.size());
  return static_cast<int>(widest);
}

CandidatePathSet build_candidate_paths(const Topology& topo,
                                       const TrafficMatrix& tm, int k) {
  if (k < 1) throw std::invalid_argument("path budget must be positive");
  CandidatePathSet set;
  set.k = k;
  set.per_demand.reserve(tm.demands.size());
  for (const Demand& d : tm.demands)
    set.per_demand.push_back(k_shortest_paths(topo, d.src, d.dst, k));
  return set;
}

LpModel build_mcr(const CandidatePathSet& paths, const TrafficMatrix& tm,
                  const Topology& topo) {
  LpModel model;
  auto x = add_flow_block(&model, paths, tm);

  std::vector<LpTerm> objective;
  for (size_t d = 0; d < paths.per_demand.size(); ++d)
    for (size_t p = 0; p < paths.per_demand[d].size(); ++p)
      objective.push_back({x[d][p], paths.per_demand[d][p].total_weight});
  model.set_objective(Sense::minimize, objective);

  auto on_link = link_flow_terms(x, paths, topo);
  for (size_t li = 0; li < topo.links.size(); ++li) {
    if (on_link[li].empty()) continue;
    model.add_constraint(on_link[li], Relation::less_equal,
                         topo.links[li].capacity);
  }
  return model;
}

LpModel build_lb(const CandidatePathSet& paths, const TrafficMatrix& tm,
                 const Topology& topo) {
  LpModel model;
  auto x = add_flow_block(&model, paths, tm);
  int r = model.add_variable("r", 0.0, kInfinity);
  model.set_objective(Sense::minimize, {{r, 1.0}});

  auto on_link = link_flow_terms(x, paths, topo);
  for (size_t li = 0; li < topo.links.size(); ++li) {
    if (on_link[li].empty()) continue;
    std::vector<LpTerm> terms = on_link[li];
    terms.push_back({r, -topo.links[li].capacity});
    model.add_constraint(std::move(terms), Relation::less_equal, 0.0);
  }
  return model;
}

double pla_delay(double z) {
  double g = 0.0;
  for (const auto& [slope, factor] : kPlaPieces)
    g = std::max(g, slope * z - factor);
  return g;
}

LpModel build_ad(const CandidatePathSet& paths, const TrafficMatrix& tm,
                 const Topology& topo) {
  LpModel model;
  auto x = add_flow_block(&model, paths, tm);

  std::vector<int> y(topo.links.size()), r(topo.links.size());
  for (size_t li = 0; li < topo.links.size(); ++li)
    y[li] = model.add_variable("y_" + std::to_string(li), 0.0, kInfinity);
  for (size_t li = 0; li < topo.links.size(); ++li)
    r[li] = model.add_variable("r_" + std::to_string(li), 0.0, kInfinity);

  std::vector<LpTerm> objective;
  for (size_t li = 0; li < topo.links.size(); ++li)
    objective.push_back({r[li], 1.0 / topo.links[li].capacity});
  model.set_objective(Sense::minimize, objective);

  auto on_link = link_flow_terms(x, paths, topo);
  for (size_t li = 0; li < topo.links.size(); ++li) {
    std::vector<LpTerm> terms = on_link[li];
    terms.push_back({y[li], -1.0});
    model.add_constraint(std::move(terms), Relation::equal, 0.0);
    for (const auto& [slope, factor] : kPlaPieces)
      model.add_constraint({{r[li], 1.0}, {y[li], -slope}},
                           Relation::greater_equal,
                           -factor * topo.links[li].capacity);
  }
  return model;
}

LpModel apply_single_path(LpModel model, const CandidatePathSet& paths,
                          const TrafficMatrix& tm) {
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    std::vector<LpTerm> pick_one;
    for (size_t p = 0; p < paths.per_demand[d].size(); ++p) {
      int u = model.add_variable(u_name(d, p), 0.0, 1.0, VarKind::binary);
      int x = model.variable_index(x_name(d, p));
      if (x < 0)
        throw std::invalid_argument("model lacks flow variables; build it "
                                    "with build_mcr/lb/ad first");
      model.add_constraint({{x, 1.0}, {u, -tm.demands[d].volume}},
                           Relation::less_equal, 0.0);
      pick_one.push_back({u, 1.0});
    }
    if (!pick_one.empty())
      model.add_constraint(std::move(pick_one), Relation::equal, 1.0);
  }
  return model;
}

DecodedSolution decode_solution(const LpSolution& sol,
                                const CandidatePathSet& paths,
                                const TrafficMatrix& tm, const Topology& topo,
                                Objective objective,
                                RoutingStrategy strategy) {
  if (sol.status != LpStatus::optimal)
    throw InfeasibleInstance("cannot decode a non-optimal solution");

  DecodedSolution out;
  out.alloc.objective = objective;
  out.alloc.strategy = strategy;
  out.alloc.objective_value = sol.objective_value;
  out.alloc.flow.resize(tm.demands.size());

  std::vector<double> load(topo.links.size(), 0.0);
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    double total = 0.0;
    int positive = 0;
    out.alloc.flow[d].resize(paths.per_demand[d].size(), 0.0);
    for (size_t p = 0; p < paths.per_demand[d].size(); ++p) {
      double v = sol.value(x_name(d, p));
      if (v < -kFlowTol)
        throw NumericalFailure("negative path flow in solution");
      if (v < 0.0) v = 0.0;
      out.alloc.flow[d][p] = v;
      total += v;
      if (v > kFlowTol) ++positive;
      for (int li : paths.per_demand[d][p].link_ids) load[li] += v;
    }
    if (std::abs(total - tm.demands[d].volume) > kFlowTol)
      throw NumericalFailure("demand not conserved in solution");
    if (strategy == RoutingStrategy::SINGLEPATH) {
      int expected = tm.demands[d].volume > kFlowTol ? 1 : 0;
      if (positive != expected)
        throw NumericalFailure("single-path demand split across paths");
    }
  }

  double cap_slack =
      objective == Objective::LB ? sol.objective_value : 1.0;
  out.loads.per_link.resize(topo.links.size());
  for (size_t li = 0; li < topo.links.size(); ++li) {
    double c = topo.links[li].capacity;
    if (load[li] > cap_slack * c + kFlowTol)
      throw NumericalFailure("link load exceeds its allowed capacity");
    out.loads.per_link[li] =
        LinkLoad{load[li], load[li] / c, c - load[li]};
  }

  if (objective == Objective::AD) {
    for (size_t li = 0; li < topo.links.size(); ++li) {
      double y = sol.value("y_" + std::to_string(li));
      if (std::abs(y - load[li]) > kFlowTol)
        throw NumericalFailure("link-load variable disagrees with paths");
    }
  }
  return out;
}

std::vector<double> flow_agg_per_path(const FlowAllocation& alloc) {
  size_t widest = 0;
  for (const auto& flows : alloc.flow) widest = std::max(widest, flows.size());
  std::vector<double> agg(widest, 0.0);
  for (const auto& flows : alloc.flow)
    for (size_t p = 0; p < flows.size(); ++p) agg[p] += flows[p];
  return agg;
}

double residual_capacity_pct(const LinkLoadVector& links) {
  double residual = 0.0, capacity = 0.0;
  for (const LinkLoad& l : links.per_link) {
    residual += l.residual;
    capacity += l.load + l.residual;
  }
  if (capacity <= 0.0) return 0.0;
  return 100.0 * residual / capacity;
}

}  // namespace te
