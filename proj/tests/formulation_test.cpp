#include "te/formulation.hpp"

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "te/rng.hpp"
#include "test_oracles.hpp"

using namespace te;

namespace {

Topology unit_triangle() {
  Topology topo = make_topology(3, {{0, 1}, {1, 2}, {0, 2}});
  topo = assign_capacities(topo, {1.0});
  return assign_weights(topo, "INV_CAP");
}

// A complete traffic matrix that is zero everywhere except the listed
// demands; keeps oracle instances down to one or two active commodities.
TrafficMatrix sparse_tm(const Topology& topo,
                        const std::vector<Demand>& active) {
  TrafficMatrix tm;
  for (NodeId s = 0; s < topo.n; ++s)
    for (NodeId t = 0; t < topo.n; ++t)
      if (s != t) tm.demands.push_back({s, t, 0.0});
  for (const Demand& d : active)
    for (Demand& slot : tm.demands)
      if (slot.src == d.src && slot.dst == d.dst) slot.volume = d.volume;
  return tm;
}

Topology configured(int n, int l, uint64_t seed) {
  Topology topo = generate_topology(n, l, seed);
  topo = assign_capacities(topo, {30.0, 35.0, 40.0});
  return assign_weights(topo, "INV_CAP");
}

}  // namespace

TEST_CASE("candidate path budgets") {
  Topology topo = unit_triangle();
  TrafficMatrix tm = gravity_tm(topo, 0);

  CandidatePathSet one = build_candidate_paths(topo, tm, 1);
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    REQUIRE(one.per_demand[d].size() == 1);
    // The single candidate is the weighted shortest path.
    auto direct = k_shortest_paths(topo, tm.demands[d].src,
                                   tm.demands[d].dst, 1);
    CHECK(one.per_demand[d][0].nodes == direct[0].nodes);
  }

  // Budget beyond the loopless-path count returns them all, unpadded; on a
  // triangle each pair has exactly a direct and a two-hop path.
  CandidatePathSet big = build_candidate_paths(topo, tm, 10);
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    REQUIRE(big.per_demand[d].size() == 2);
    CHECK(big.per_demand[d][0].nodes.size() == 2);
    CHECK(big.per_demand[d][1].nodes.size() == 3);
  }
}

TEST_CASE("mcr routes everything on the cheaper path when capacity allows") {
  // Path costs 1 (direct) and 2 (two hops), ample capacity everywhere.
  Topology topo = make_topology(3, {{0, 1}, {1, 2}, {0, 2}});
  for (Link& l : topo.links) {
    l.capacity = 100.0;
    l.weight = 1.0;
  }
  TrafficMatrix tm = sparse_tm(topo, {{0, 2, 5.0}});
  CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
  LpModel model = build_mcr(paths, tm, topo);
  LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(5.0));  // h * cost 1

  DecodedSolution decoded =
      decode_solution(sol, paths, tm, topo, Objective::MCR,
                      RoutingStrategy::MULTIPATH);
  auto agg = flow_agg_per_path(decoded.alloc);
  CHECK(agg[0] == doctest::Approx(5.0));
  CHECK(agg[1] == doctest::Approx(0.0));
}

TEST_CASE("mcr overflows onto the dearer path when capacity binds") {
  // Direct link (0,2): cheapest but capped at 6; the two-hop route costs
  // more and has slack. A demand of 10 must split 6 / 4.
  Topology topo = make_topology(3, {{0, 1}, {1, 2}, {0, 2}});
  for (Link& l : topo.links) {
    bool direct = (l.src == 0 && l.dst == 2) || (l.src == 2 && l.dst == 0);
    l.capacity = direct ? 6.0 : 100.0;
    l.weight = direct ? 1.0 : 0.75;  // detour total 1.5
  }
  TrafficMatrix tm = sparse_tm(topo, {{0, 2, 10.0}});
  CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
  LpModel model = build_mcr(paths, tm, topo);
  LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::optimal);

  DecodedSolution decoded = decode_solution(
      sol, paths, tm, topo, Objective::MCR, RoutingStrategy::MULTIPATH);
  int d = -1;
  for (size_t i = 0; i < tm.demands.size(); ++i)
    if (tm.demands[i].volume > 0) d = static_cast<int>(i);
  CHECK(decoded.alloc.flow[d][0] == doctest::Approx(6.0));
  CHECK(decoded.alloc.flow[d][1] == doctest::Approx(4.0));

  auto expected = oracle::grid_split_oracle(topo, tm, paths, Objective::MCR);
  REQUIRE(expected.feasible);
  CHECK(sol.objective_value ==
        doctest::Approx(expected.objective).epsilon(0.005));
}

TEST_CASE("zero traffic matrices cost nothing") {
  Topology topo = unit_triangle();
  TrafficMatrix tm = sparse_tm(topo, {});
  CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
  for (Objective obj : {Objective::MCR, Objective::LB, Objective::AD}) {
    LpModel model = obj == Objective::MCR   ? build_mcr(paths, tm, topo)
                    : obj == Objective::LB ? build_lb(paths, tm, topo)
                                           : build_ad(paths, tm, topo);
    LpSolution sol = solve_lp(model);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value == doctest::Approx(0.0));
    DecodedSolution decoded =
        decode_solution(sol, paths, tm, topo, obj, RoutingStrategy::MULTIPATH);
    for (const LinkLoad& l : decoded.loads.per_link) {
      CHECK(l.load == doctest::Approx(0.0));
      CHECK(l.residual == doctest::Approx(l.load + l.residual));
    }
    CHECK(residual_capacity_pct(decoded.loads) == doctest::Approx(100.0));
  }
}

TEST_CASE("lb halves utilization by splitting across two routes") {
  Topology topo = unit_triangle();
  for (Link& l : topo.links) {
    l.capacity = 10.0;
    l.weight = 0.1;
  }
  TrafficMatrix tm = sparse_tm(topo, {{0, 2, 10.0}});
  CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
  LpModel model = build_lb(paths, tm, topo);
  LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(0.5));

  auto expected = oracle::grid_split_oracle(topo, tm, paths, Objective::LB);
  CHECK(sol.objective_value ==
        doctest::Approx(expected.objective).epsilon(0.005));
}

TEST_CASE("lb optimum is bounded by the scaling target") {
  for (uint64_t seed : {11u, 12u, 13u}) {
    Topology topo = configured(6, 9, seed);
    TrafficMatrix tm =
        scale_to_max_utilization(bimodal_tm(topo, seed), topo, 0.07);
    CandidatePathSet paths = build_candidate_paths(topo, tm, 3);
    LpSolution sol = solve_lp(build_lb(paths, tm, topo));
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective_value <= 0.07 + 1e-6);
  }
}

TEST_CASE("delay approximation hits the breakpoint values") {
  CHECK(pla_delay(0.0) == doctest::Approx(0.0));
  CHECK(pla_delay(1.0 / 3.0) == doctest::Approx(0.5));
  CHECK(pla_delay(0.9) == doctest::Approx(9.0));
}

TEST_CASE("delay pieces meet exactly at the breakpoints") {
  // Rational arithmetic: piece i is (s, f) meaning s*z - f, with the
  // breakpoints as exact fractions p/q. Equality of s1*p/q - f1 and
  // s2*p/q - f2 is checked on cross-multiplied integers. Slopes carry a
  // factor of 2 to keep 3/2 and 9/2 integral.
  struct Piece {
    long long slope2;  // 2 * slope
    long long factor;
  };
  const Piece pieces[6] = {{3, 0}, {9, 1}, {30, 8}, {100, 36}, {400, 171},
                           {8000, 3781}};
  struct Breakpoint {
    long long p, q;
    int left, right;
  };
  const Breakpoint brk[5] = {
      {1, 3, 0, 1}, {2, 3, 1, 2}, {4, 5, 2, 3}, {9, 10, 3, 4}, {19, 20, 4, 5}};
  for (const Breakpoint& b : brk) {
    const Piece& lhs = pieces[b.left];
    const Piece& rhs = pieces[b.right];
    // 2*q * (value_left - value_right) == 0 exactly.
    long long left = lhs.slope2 * b.p - 2 * lhs.factor * b.q;
    long long right = rhs.slope2 * b.p - 2 * rhs.factor * b.q;
    CHECK(left == right);
  }
}

TEST_CASE("max-of-pieces equals the case form") {
  for (int i = 0; i <= 2000; ++i) {
    double z = 0.99 * i / 2000.0;
    CHECK(pla_delay(z) ==
          doctest::Approx(oracle::case_form_delay(z)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("ad prices a half-loaded link at 1.25 of its capacity") {
  Topology topo = make_topology(2, {{0, 1}});
  topo = assign_capacities(topo, {40.0});
  topo = assign_weights(topo, "INV_CAP");
  TrafficMatrix tm = sparse_tm(topo, {{0, 1, 20.0}});  // z = 1/2
  CandidatePathSet paths = build_candidate_paths(topo, tm, 1);
  LpModel model = build_ad(paths, tm, topo);
  LpSolution sol = solve_lp(model);
  REQUIRE(sol.status == LpStatus::optimal);
  int li = topo.link_index(0, 1);
  CHECK(sol.value("r_" + std::to_string(li)) ==
        doctest::Approx(1.25 * 40.0));
  CHECK(sol.objective_value == doctest::Approx(1.25));
}

TEST_CASE("ad linearization is tight at the optimum") {
  for (uint64_t seed : {3u, 4u}) {
    Topology topo = configured(5, 7, seed);
    TrafficMatrix tm =
        scale_to_max_utilization(gravity_tm(topo, seed), topo, 0.6);
    CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
    LpModel model = build_ad(paths, tm, topo);
    LpSolution sol = solve_lp(model);
    REQUIRE(sol.status == LpStatus::optimal);
    DecodedSolution decoded = decode_solution(
        sol, paths, tm, topo, Objective::AD, RoutingStrategy::MULTIPATH);
    for (size_t li = 0; li < topo.links.size(); ++li) {
      double c = topo.links[li].capacity;
      double r = sol.value("r_" + std::to_string(li));
      CHECK(r == doctest::Approx(c * pla_delay(
                     decoded.loads.per_link[li].load / c)).epsilon(1e-6));
    }
  }
}

TEST_CASE("single path with one candidate equals the relaxation") {
  Topology topo = configured(5, 7, 9);
  TrafficMatrix tm = scale_to_max_utilization(gravity_tm(topo, 9), topo, 0.4);
  CandidatePathSet paths = build_candidate_paths(topo, tm, 1);
  LpModel lp = build_lb(paths, tm, topo);
  LpModel milp = apply_single_path(lp, paths, tm);
  LpSolution a = solve_lp(lp);
  LpSolution b = solve_milp(milp);
  REQUIRE(a.status == LpStatus::optimal);
  REQUIRE(b.status == LpStatus::optimal);
  CHECK(b.objective_value == doctest::Approx(a.objective_value));
}

TEST_CASE("single-path optimum matches path-assignment enumeration") {
  // Three positive demands with two candidate paths each: compare the MILP
  // against all 2^3 path assignments evaluated directly.
  Topology topo = unit_triangle();
  for (Link& l : topo.links) {
    l.capacity = 50.0;
    l.weight = 0.02;
  }
  TrafficMatrix tm =
      sparse_tm(topo, {{0, 2, 10.0}, {2, 0, 8.0}, {0, 1, 6.0}});
  CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
  LpModel milp = apply_single_path(build_lb(paths, tm, topo), paths, tm);
  LpSolution sol = solve_milp(milp);
  REQUIRE(sol.status == LpStatus::optimal);

  std::vector<int> active;
  for (size_t d = 0; d < tm.demands.size(); ++d)
    if (tm.demands[d].volume > 0) active.push_back(static_cast<int>(d));
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<double> load(topo.links.size(), 0.0);
    for (size_t i = 0; i < active.size(); ++i) {
      int d = active[i];
      const Path& p = paths.per_demand[d][(mask >> i) & 1];
      for (int li : p.link_ids) load[li] += tm.demands[d].volume;
    }
    double worst = 0.0;
    for (size_t li = 0; li < load.size(); ++li)
      worst = std::max(worst, load[li] / topo.links[li].capacity);
    best = std::min(best, worst);
  }
  CHECK(sol.objective_value == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("single-path never beats multipath") {
  for (uint64_t seed : {31u, 32u, 33u}) {
    Topology topo = configured(6, 9, seed);
    TrafficMatrix tm =
        scale_to_max_utilization(bimodal_tm(topo, seed), topo, 0.3);
    CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
    LpModel lp = build_lb(paths, tm, topo);
    LpSolution multi = solve_lp(lp);
    LpSolution single = solve_milp(apply_single_path(lp, paths, tm));
    REQUIRE(multi.status == LpStatus::optimal);
    REQUIRE(single.status == LpStatus::optimal);
    CHECK(single.objective_value >= multi.objective_value - 1e-9);
  }
}

TEST_CASE("optima improve monotonically with the path budget") {
  for (uint64_t seed : {41u, 42u}) {
    Topology topo = configured(6, 10, seed);
    TrafficMatrix tm =
        scale_to_max_utilization(lognormal_tm(topo, seed), topo, 0.5);
    for (Objective obj : {Objective::MCR, Objective::LB, Objective::AD}) {
      double prev = std::numeric_limits<double>::infinity();
      for (int k : {1, 2, 4}) {
        CandidatePathSet paths = build_candidate_paths(topo, tm, k);
        LpModel model = obj == Objective::MCR ? build_mcr(paths, tm, topo)
                        : obj == Objective::LB ? build_lb(paths, tm, topo)
                                               : build_ad(paths, tm, topo);
        LpSolution sol = solve_lp(model);
        REQUIRE(sol.status == LpStatus::optimal);
        CHECK(sol.objective_value <= prev + 1e-6);
        prev = sol.objective_value;
      }
    }
  }
}

TEST_CASE("decode validates the demand and strategy invariants") {
  Topology topo = make_topology(2, {{0, 1}});
  topo = assign_capacities(topo, {100.0});
  topo = assign_weights(topo, "INV_CAP");
  TrafficMatrix tm = sparse_tm(topo, {{0, 1, 5.0}});
  CandidatePathSet paths = build_candidate_paths(topo, tm, 1);
  LpModel model = build_mcr(paths, tm, topo);
  LpSolution sol = solve_lp(model);
  DecodedSolution decoded = decode_solution(
      sol, paths, tm, topo, Objective::MCR, RoutingStrategy::MULTIPATH);
  int li = topo.link_index(0, 1);
  CHECK(decoded.loads.per_link[li].utilization == doctest::Approx(0.05));
  CHECK(decoded.loads.per_link[li].residual == doctest::Approx(95.0));

  LpSolution bad;
  bad.status = LpStatus::infeasible;
  CHECK_THROWS_AS(decode_solution(bad, paths, tm, topo, Objective::MCR,
                                  RoutingStrategy::MULTIPATH),
                  InfeasibleInstance);
}

TEST_CASE("per-demand flows sum to the demand volume everywhere") {
  Topology topo = configured(6, 9, 55);
  TrafficMatrix tm =
      scale_to_max_utilization(gravity_tm(topo, 55), topo, 0.5);
  CandidatePathSet paths = build_candidate_paths(topo, tm, 3);
  LpSolution sol = solve_lp(build_lb(paths, tm, topo));
  DecodedSolution decoded = decode_solution(
      sol, paths, tm, topo, Objective::LB, RoutingStrategy::MULTIPATH);
  for (size_t d = 0; d < tm.demands.size(); ++d) {
    double total = 0.0;
    for (double f : decoded.alloc.flow[d]) total += f;
    CHECK(total == doctest::Approx(tm.demands[d].volume).epsilon(1e-6));
  }
  auto agg = flow_agg_per_path(decoded.alloc);
  double agg_total = 0.0;
  for (double v : agg) agg_total += v;
  CHECK(agg_total == doctest::Approx(tm.total_volume()).epsilon(1e-6));
}

TEST_CASE("grid oracle agrees with the solver on random tiny instances") {
  Rng rng(606);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 4 + static_cast<int>(rng.uniform_int(3));
    int max_pairs = n * (n - 1) / 2;
    int l = n - 1 + static_cast<int>(rng.uniform_int(max_pairs - n + 2));
    Topology topo = configured(n, l, rng.next_u64());
    std::vector<Demand> active;
    int demands = 1 + static_cast<int>(rng.uniform_int(2));
    for (int i = 0; i < demands; ++i) {
      NodeId s = static_cast<NodeId>(rng.uniform_int(n));
      NodeId t = static_cast<NodeId>(rng.uniform_int(n));
      if (s == t) t = (t + 1) % n;
      active.push_back({s, t, 6.0 + 2.0 * rng.uniform_int(4)});
    }
    TrafficMatrix tm = sparse_tm(topo, active);
    CandidatePathSet paths = build_candidate_paths(topo, tm, 2);
    for (Objective obj : {Objective::MCR, Objective::LB, Objective::AD}) {
      LpModel model = obj == Objective::MCR   ? build_mcr(paths, tm, topo)
                      : obj == Objective::LB ? build_lb(paths, tm, topo)
                                             : build_ad(paths, tm, topo);
      LpSolution sol = solve_lp(model);
      auto expected = oracle::grid_split_oracle(topo, tm, paths, obj);
      REQUIRE(expected.feasible);
      REQUIRE(sol.status == LpStatus::optimal);
      CHECK(sol.objective_value ==
            doctest::Approx(expected.objective).epsilon(0.005));
    }
  }
}
