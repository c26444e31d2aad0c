#include "te/lp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <utility>

namespace te {

namespace {

constexpr double kFeasTol = 1e-6;    // constraint satisfaction at the optimum
constexpr double kOptTol = 1e-9;     // reduced-cost threshold
constexpr double kPivotTol = 1e-10;  // smallest acceptable pivot magnitude
constexpr double kIntTol = 1e-6;     // binary integrality
constexpr int kDegenerateLimit = 50; // degenerate pivots before Bland's rule

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

int LpModel::add_variable(const std::string& name, double lower, double upper,
                          VarKind kind) {
  if (index_.count(name))
    throw std::invalid_argument("duplicate variable name '" + name + "'");
  if (kind == VarKind::binary) {
    lower = 0.0;
    upper = 1.0;
  }
  if (lower > upper)
    throw std::invalid_argument("crossed bounds for '" + name + "'");
  int id = static_cast<int>(vars_.size());
  vars_.push_back(LpVariable{name, lower, upper, kind});
  index_.emplace(name, id);
  return id;
}

void LpModel::add_constraint(std::vector<LpTerm> terms, Relation rel,
                             double rhs) {
  if (terms.empty()) throw std::invalid_argument("empty constraint");
  for (const LpTerm& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw std::invalid_argument("constraint references unknown variable");
  cons_.push_back(LpConstraint{std::move(terms), rel, rhs});
}

void LpModel::set_objective(Sense sense, std::vector<LpTerm> terms) {
  for (const LpTerm& t : terms)
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw std::invalid_argument("objective references unknown variable");
  sense_ = sense;
  objective_ = std::move(terms);
}

int LpModel::variable_index(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

bool LpModel::has_binaries() const {
  for (const LpVariable& v : vars_)
    if (v.kind == VarKind::binary) return true;
  return false;
}

double LpSolution::value(std::string_view name) const {
  auto it = assignment.find(std::string(name));
  if (it == assignment.end())
    throw std::invalid_argument("no variable '" + std::string(name) +
                                "' in solution");
  return it->second;
}

namespace {

enum class ColState : uint8_t { basic, at_lower, at_upper, free_zero };

// Dense bounded-variable simplex working set. Column layout: structural
// variables, then one slack per row, then artificials appended as needed.
struct Simplex {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;     // rows x cols tableau, row-major
  std::vector<double> lo, up;
  std::vector<double> cost;  // phase-2 cost (min sense)
  std::vector<double> d;     // reduced costs for the active phase
  std::vector<double> xb;    // basic variable values per row
  std::vector<int> basis;
  std::vector<ColState> state;
  int first_artificial = 0;
  bool bland = false;
  int degenerate_run = 0;
  long iterations = 0;
  long iteration_cap = 0;

  double nonbasic_value(int j) const {
    switch (state[j]) {
      case ColState::at_lower:
        return lo[j];
      case ColState::at_upper:
        return up[j];
      default:
        return 0.0;
    }
  }

  bool eligible(int j, double tol) const {
    if (state[j] == ColState::basic) return false;
    if (lo[j] == up[j]) return false;
    switch (state[j]) {
      case ColState::at_lower:
        return d[j] < -tol;
      case ColState::at_upper:
        return d[j] > tol;
      case ColState::free_zero:
        return std::abs(d[j]) > tol;
      default:
        return false;
    }
  }

  int choose_entering() const {
    if (bland) {
      for (int j = 0; j < cols; ++j)
        if (eligible(j, kOptTol)) return j;
      return -1;
    }
    int best = -1;
    double best_score = kOptTol;
    for (int j = 0; j < cols; ++j) {
      if (!eligible(j, kOptTol)) continue;
      double score = std::abs(d[j]);
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // One simplex phase; returns true when the phase objective is optimal,
  // false when unbounded in the improving direction.
  bool iterate() {
    for (;;) {
      if (++iterations > iteration_cap)
        throw NumericalFailure("simplex iteration cap exceeded");
      int e = choose_entering();
      if (e < 0) return true;
      double sigma =
          (state[e] == ColState::at_upper || (state[e] == ColState::free_zero &&
                                              d[e] > 0))
              ? -1.0
              : 1.0;

      // Ratio test: how far can the entering variable move before a basic
      // variable (or its own opposite bound) blocks it.
      double t_best = kInfinity;
      int leave_row = -1;
      bool leave_at_upper = false;
      double best_piv = 0.0;
      for (int i = 0; i < rows; ++i) {
        double g = sigma * a[static_cast<size_t>(i) * cols + e];
        if (std::abs(g) <= kPivotTol) continue;
        int bi = basis[i];
        double t_i;
        bool to_upper;
        if (g > 0) {
          if (lo[bi] == -kInfinity) continue;
          t_i = (xb[i] - lo[bi]) / g;
          to_upper = false;
        } else {
          if (up[bi] == kInfinity) continue;
          t_i = (up[bi] - xb[i]) / (-g);
          to_upper = true;
        }
        if (t_i < 0) t_i = 0;
        bool take;
        if (t_i < t_best - 1e-12) {
          take = true;
        } else if (t_i <= t_best + 1e-12 && leave_row >= 0) {
          take = bland ? basis[i] < basis[leave_row]
                       : std::abs(g) > std::abs(best_piv);
        } else {
          take = leave_row < 0 && t_i < kInfinity;
        }
        if (take) {
          t_best = std::min(t_best, t_i);
          leave_row = i;
          leave_at_upper = to_upper;
          best_piv = g;
        }
      }
      double t_own = (lo[e] > -kInfinity && up[e] < kInfinity)
                         ? up[e] - lo[e]
                         : kInfinity;

      if (t_own < t_best - 1e-12 ||
          (leave_row < 0 && t_own < kInfinity)) {
        // Bound flip: the entering variable crosses to its other bound.
        flip_bound(e, sigma, t_own);
        track_degeneracy(t_own);
        continue;
      }
      if (leave_row < 0) return false;  // unbounded direction
      pivot(e, sigma, t_best, leave_row, leave_at_upper);
      track_degeneracy(t_best);
    }
  }

  void track_degeneracy(double step) {
    if (step <= 1e-12) {
      if (++degenerate_run >= kDegenerateLimit) bland = true;
    } else {
      degenerate_run = 0;
    }
  }

  void flip_bound(int e, double sigma, double t) {
    for (int i = 0; i < rows; ++i)
      xb[i] -= sigma * t * a[static_cast<size_t>(i) * cols + e];
    state[e] = state[e] == ColState::at_lower ? ColState::at_upper
                                              : ColState::at_lower;
  }

  void pivot(int e, double sigma, double t, int r, bool leave_at_upper) {
    std::vector<double> col_e(rows);
    for (int i = 0; i < rows; ++i)
      col_e[i] = a[static_cast<size_t>(i) * cols + e];

    double v_new = nonbasic_value(e) + sigma * t;
    for (int i = 0; i < rows; ++i)
      if (i != r) xb[i] -= sigma * t * col_e[i];
    int lv = basis[r];
    xb[r] = v_new;

    double* row_r = &a[static_cast<size_t>(r) * cols];
    double inv = 1.0 / col_e[r];
    for (int j = 0; j < cols; ++j) row_r[j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      double f = col_e[i];
      if (f == 0.0) continue;
      double* row_i = &a[static_cast<size_t>(i) * cols];
      for (int j = 0; j < cols; ++j) row_i[j] -= f * row_r[j];
    }
    double de = d[e];
    if (de != 0.0)
      for (int j = 0; j < cols; ++j) d[j] -= de * row_r[j];

    basis[r] = e;
    state[e] = ColState::basic;
    state[lv] = leave_at_upper ? ColState::at_upper : ColState::at_lower;
  }

  void reduced_costs_from(const std::vector<double>& c) {
    d = c;
    for (int i = 0; i < rows; ++i) {
      double cb = c[basis[i]];
      if (cb == 0.0) continue;
      const double* row_i = &a[static_cast<size_t>(i) * cols];
      for (int j = 0; j < cols; ++j) d[j] -= cb * row_i[j];
    }
  }
};

struct BoundOverride {
  int var;
  double lower;
  double upper;
};

// Core solve on the continuous relaxation, with optional per-variable bound
// overrides (used by branch and bound).
LpSolution solve_core(const LpModel& model,
                      const std::vector<BoundOverride>& overrides) {
  const auto& vars = model.variables();
  const auto& cons = model.constraints();
  const int nv = static_cast<int>(vars.size());
  const int m = static_cast<int>(cons.size());

  std::vector<double> vlo(nv), vup(nv);
  for (int j = 0; j < nv; ++j) {
    vlo[j] = vars[j].lower;
    vup[j] = vars[j].upper;
  }
  for (const BoundOverride& o : overrides) {
    vlo[o.var] = o.lower;
    vup[o.var] = o.upper;
  }

  Simplex sx;
  sx.rows = m;
  int slack0 = nv;
  int ncols_nosart = nv + m;

  // Assemble rows as equalities with one slack each; sign conventions keep
  // the starting basis matrix equal to the identity.
  std::vector<std::vector<double>> dense_rows(m);
  std::vector<double> rhs(m);
  std::vector<double> slack_lo(m), slack_up(m);
  for (int i = 0; i < m; ++i) {
    dense_rows[i].assign(ncols_nosart, 0.0);
    for (const LpTerm& t : cons[i].terms) dense_rows[i][t.var] += t.coef;
    dense_rows[i][slack0 + i] = 1.0;
    rhs[i] = cons[i].rhs;
    switch (cons[i].rel) {
      case Relation::less_equal:
        slack_lo[i] = 0.0;
        slack_up[i] = kInfinity;
        break;
      case Relation::greater_equal:
        slack_lo[i] = -kInfinity;
        slack_up[i] = 0.0;
        break;
      case Relation::equal:
        slack_lo[i] = 0.0;
        slack_up[i] = 0.0;
        break;
    }
  }

  sx.lo.assign(vlo.begin(), vlo.end());
  sx.up.assign(vup.begin(), vup.end());
  for (int i = 0; i < m; ++i) {
    sx.lo.push_back(slack_lo[i]);
    sx.up.push_back(slack_up[i]);
  }

  // Nonbasic starting point: finite bound nearest zero, or zero for free.
  std::vector<ColState> init_state(ncols_nosart);
  auto rest_state = [&](int j) {
    if (sx.lo[j] == -kInfinity && sx.up[j] == kInfinity)
      return ColState::free_zero;
    if (sx.lo[j] == -kInfinity) return ColState::at_upper;
    if (sx.up[j] == kInfinity) return ColState::at_lower;
    return std::abs(sx.lo[j]) <= std::abs(sx.up[j]) ? ColState::at_lower
                                                    : ColState::at_upper;
  };
  for (int j = 0; j < ncols_nosart; ++j) init_state[j] = rest_state(j);

  // Decide per row: slack basic if its implied value fits its bounds,
  // otherwise park the slack at a bound and add an artificial.
  std::vector<int> artificial_row;
  std::vector<double> art_value;
  std::vector<int> basis(m);
  std::vector<double> xb(m);
  for (int i = 0; i < m; ++i) {
    double residual = rhs[i];
    for (int j = 0; j < nv; ++j) {
      if (dense_rows[i][j] == 0.0) continue;
      double v = init_state[j] == ColState::at_lower
                     ? sx.lo[j]
                     : (init_state[j] == ColState::at_upper ? sx.up[j] : 0.0);
      residual -= dense_rows[i][j] * v;
    }
    int s = slack0 + i;
    if (residual >= sx.lo[s] - 1e-9 && residual <= sx.up[s] + 1e-9) {
      basis[i] = s;
      xb[i] = residual;
      init_state[s] = ColState::basic;
    } else {
      double sval = std::clamp(residual, sx.lo[s], sx.up[s]);
      init_state[s] = sval == sx.lo[s] ? ColState::at_lower
                                       : ColState::at_upper;
      double art = residual - sval;
      if (art < 0) {
        for (double& c : dense_rows[i]) c = -c;
        rhs[i] = -rhs[i];
        art = -art;
      }
      artificial_row.push_back(i);
      art_value.push_back(art);
      basis[i] = -1;  // patched below
    }
  }

  const int n_art = static_cast<int>(artificial_row.size());
  sx.cols = ncols_nosart + n_art;
  sx.first_artificial = ncols_nosart;
  sx.a.assign(static_cast<size_t>(m) * sx.cols, 0.0);
  for (int i = 0; i < m; ++i)
    std::copy(dense_rows[i].begin(), dense_rows[i].end(),
              sx.a.begin() + static_cast<size_t>(i) * sx.cols);
  sx.state = std::move(init_state);
  sx.state.resize(sx.cols, ColState::basic);
  sx.lo.resize(sx.cols, 0.0);
  sx.up.resize(sx.cols, kInfinity);
  for (int k = 0; k < n_art; ++k) {
    int i = artificial_row[k];
    int col = ncols_nosart + k;
    sx.a[static_cast<size_t>(i) * sx.cols + col] = 1.0;
    basis[i] = col;
    xb[i] = art_value[k];
  }
  sx.basis = std::move(basis);
  sx.xb = std::move(xb);
  sx.iteration_cap = 50000 + 200L * m;

  // Phase-2 cost vector in min sense.
  std::vector<double> cost(sx.cols, 0.0);
  double obj_sign = model.objective_sense() == Sense::maximize ? -1.0 : 1.0;
  for (const LpTerm& t : model.objective_terms()) cost[t.var] += obj_sign * t.coef;

  LpSolution sol;
  if (n_art > 0) {
    std::vector<double> phase1(sx.cols, 0.0);
    for (int k = 0; k < n_art; ++k) phase1[ncols_nosart + k] = 1.0;
    sx.reduced_costs_from(phase1);
    if (!sx.iterate())
      throw NumericalFailure("phase-1 objective unbounded");
    double infeasibility = 0.0;
    for (int i = 0; i < m; ++i)
      if (sx.basis[i] >= sx.first_artificial) infeasibility += sx.xb[i];
    if (infeasibility > 1e-7) {
      sol.status = LpStatus::infeasible;
      return sol;
    }
    // Pivot leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (sx.basis[i] < sx.first_artificial) continue;
      const double* row_i = &sx.a[static_cast<size_t>(i) * sx.cols];
      int enter = -1;
      for (int j = 0; j < sx.first_artificial; ++j) {
        if (sx.state[j] == ColState::basic) continue;
        if (std::abs(row_i[j]) > 1e-7) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) sx.pivot(enter, 1.0, 0.0, i, false);
      // else: redundant row; the artificial stays basic pinned at zero.
    }
  }
  bool artificial_basic = false;
  for (int i = 0; i < m; ++i)
    if (sx.basis[i] >= sx.first_artificial) artificial_basic = true;
  if (n_art > 0 && !artificial_basic) {
    // Nothing references the artificial columns anymore; drop them so the
    // phase-2 row operations run on a narrower tableau.
    std::vector<double> packed(static_cast<size_t>(m) * ncols_nosart);
    for (int i = 0; i < m; ++i)
      std::copy(sx.a.begin() + static_cast<size_t>(i) * sx.cols,
                sx.a.begin() + static_cast<size_t>(i) * sx.cols + ncols_nosart,
                packed.begin() + static_cast<size_t>(i) * ncols_nosart);
    sx.a = std::move(packed);
    sx.cols = ncols_nosart;
    sx.lo.resize(ncols_nosart);
    sx.up.resize(ncols_nosart);
    sx.state.resize(ncols_nosart);
    cost.resize(ncols_nosart);
  } else {
    // Keep leftover artificials but pin them so they may not re-enter.
    for (int k = 0; k < n_art; ++k) {
      sx.lo[ncols_nosart + k] = 0.0;
      sx.up[ncols_nosart + k] = 0.0;
    }
  }

  sx.reduced_costs_from(cost);
  bool optimal = sx.iterate();
  if (!optimal) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  std::vector<double> x(nv);
  for (int j = 0; j < nv; ++j) x[j] = sx.nonbasic_value(j);
  for (int i = 0; i < m; ++i)
    if (sx.basis[i] < nv) x[sx.basis[i]] = sx.xb[i];

  // Validate the claimed optimum before reporting it.
  for (int j = 0; j < nv; ++j) {
    if (x[j] < vlo[j] - kFeasTol || x[j] > vup[j] + kFeasTol)
      throw NumericalFailure("variable bound violated at optimum");
  }
  for (const LpConstraint& c : cons) {
    double lhs = 0.0;
    for (const LpTerm& t : c.terms) lhs += t.coef * x[t.var];
    double viol = 0.0;
    switch (c.rel) {
      case Relation::less_equal:
        viol = lhs - c.rhs;
        break;
      case Relation::greater_equal:
        viol = c.rhs - lhs;
        break;
      case Relation::equal:
        viol = std::abs(lhs - c.rhs);
        break;
    }
    if (viol > kFeasTol)
      throw NumericalFailure("constraint violated at optimum by " +
                             format_double(viol));
  }

  sol.status = LpStatus::optimal;
  double obj = 0.0;
  for (const LpTerm& t : model.objective_terms()) obj += t.coef * x[t.var];
  sol.objective_value = obj;
  sol.assignment.reserve(nv);
  for (int j = 0; j < nv; ++j) sol.assignment.emplace(vars[j].name, x[j]);
  return sol;
}

}  // namespace

LpSolution solve_lp(const LpModel& model) {
  if (model.has_binaries())
    throw std::invalid_argument("solve_lp requires a binary-free model");
  return solve_core(model, {});
}

namespace {

struct BbNode {
  double bound = 0.0;   // relaxation objective in min sense
  long long qbound = 0; // bound quantized for ordering
  int depth = 0;
  long seq = 0;
  std::vector<BoundOverride> fixes;
  std::vector<double> bin_values;
};

// Best-first on the relaxation bound, deepest-first among bounds that tie.
// Bounds are compared on a coarse grid: sibling relaxations of one optimal
// face differ only by rounding noise, and exact comparison would shuffle the
// queue instead of diving to an incumbent.
struct BbNodeOrder {
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.qbound != b.qbound) return a.qbound > b.qbound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

long long quantize_bound(double bound) {
  double scaled = bound / 1e-9;
  if (scaled >= 9e17) return 900000000000000000LL;
  if (scaled <= -9e17) return -900000000000000000LL;
  return static_cast<long long>(std::floor(scaled));
}

int most_fractional(const std::vector<double>& bin_values) {
  int pick = -1;
  double best = kIntTol;
  for (int i = 0; i < static_cast<int>(bin_values.size()); ++i) {
    double frac = std::min(bin_values[i], 1.0 - bin_values[i]);
    if (frac > best) {
      best = frac;
      pick = i;
    }
  }
  return pick;
}

}  // namespace

LpSolution solve_milp(const LpModel& model, const MilpOptions& opts) {
  std::vector<int> binaries;
  for (int j = 0; j < static_cast<int>(model.variables().size()); ++j)
    if (model.variables()[j].kind == VarKind::binary) binaries.push_back(j);
  if (binaries.empty()) return solve_core(model, {});

  const double sense_sign =
      model.objective_sense() == Sense::maximize ? -1.0 : 1.0;
  auto to_min = [&](double v) { return sense_sign * v; };

  auto relax = [&](const std::vector<BoundOverride>& fixes, LpSolution* out,
                   std::vector<double>* bin_vals) {
    *out = solve_core(model, fixes);
    if (out->status != LpStatus::optimal) return;
    bin_vals->clear();
    for (int b : binaries)
      bin_vals->push_back(out->value(model.variables()[b].name));
  };

  long explored = 1;
  LpSolution root;
  std::vector<double> root_bins;
  relax({}, &root, &root_bins);
  if (root.status != LpStatus::optimal) return root;

  LpSolution incumbent;
  bool have_incumbent = false;
  double incumbent_min = kInfinity;

  // Root diving heuristic: walk the relaxation toward an integral point by
  // fixing near-integral binaries outright plus the single most decided
  // fractional one each round. A good incumbent found here lets best-first
  // search prune whole plateaus of tied relaxations.
  {
    std::vector<BoundOverride> fixes;
    LpSolution cur = root;
    std::vector<double> cur_bins = root_bins;
    std::vector<char> fixed(binaries.size(), 0);
    for (size_t round = 0; round <= binaries.size(); ++round) {
      if (most_fractional(cur_bins) < 0) {
        incumbent = cur;
        incumbent_min = to_min(cur.objective_value);
        have_incumbent = true;
        break;
      }
      int decided = -1;
      double decided_score = -1.0;
      for (size_t i = 0; i < cur_bins.size(); ++i) {
        if (fixed[i]) continue;
        double v = cur_bins[i];
        if (v >= 1.0 - kIntTol || v <= kIntTol) {
          fixes.push_back(BoundOverride{binaries[i], std::round(v),
                                        std::round(v)});
          fixed[i] = 1;
          continue;
        }
        double score = std::max(v, 1.0 - v);
        if (score > decided_score) {
          decided_score = score;
          decided = static_cast<int>(i);
        }
      }
      if (decided >= 0) {
        double target = cur_bins[decided] >= 0.5 ? 1.0 : 0.0;
        fixes.push_back(BoundOverride{binaries[decided], target, target});
        fixed[decided] = 1;
      }
      if (++explored > opts.node_limit)
        throw NodeLimitExceeded("branch-and-bound node limit exceeded");
      relax(fixes, &cur, &cur_bins);
      if (cur.status != LpStatus::optimal) break;  // dive dead-ends; give up
    }
  }

  std::priority_queue<BbNode, std::vector<BbNode>, BbNodeOrder> open;
  long seq = 0;

  auto offer = [&](LpSolution&& sol, const std::vector<double>& bin_vals,
                   std::vector<BoundOverride>&& fixes, int depth) {
    double bound = to_min(sol.objective_value);
    if (have_incumbent && bound >= incumbent_min - 1e-9) return;
    if (most_fractional(bin_vals) < 0) {
      incumbent = std::move(sol);
      incumbent_min = bound;
      have_incumbent = true;
      return;
    }
    open.push(BbNode{bound, quantize_bound(bound), depth, seq++,
                     std::move(fixes), bin_vals});
  };

  {
    LpSolution r = std::move(root);
    offer(std::move(r), root_bins, {}, 0);
  }

  while (!open.empty()) {
    BbNode node = open.top();
    open.pop();
    if (have_incumbent && node.bound >= incumbent_min - 1e-9) break;
    int pick = most_fractional(node.bin_values);
    int var = binaries[pick];
    double v = node.bin_values[pick];
    int first = v >= 0.5 ? 1 : 0;
    for (int round = 0; round < 2; ++round) {
      int fix = round == 0 ? first : 1 - first;
      if (++explored > opts.node_limit)
        throw NodeLimitExceeded("branch-and-bound node limit exceeded");
      std::vector<BoundOverride> fixes = node.fixes;
      fixes.push_back(BoundOverride{var, static_cast<double>(fix),
                                    static_cast<double>(fix)});
      LpSolution child;
      std::vector<double> child_bins;
      relax(fixes, &child, &child_bins);
      if (child.status != LpStatus::optimal) continue;
      offer(std::move(child), child_bins, std::move(fixes), node.depth + 1);
    }
  }

  if (!have_incumbent) {
    LpSolution sol;
    sol.status = LpStatus::infeasible;
    return sol;
  }

  // Snap binaries onto {0,1} and recompute the objective from the snapped
  // assignment so reported values are exact for integer data.
  for (int b : binaries) {
    auto& v = incumbent.assignment.at(model.variables()[b].name);
    v = v >= 0.5 ? 1.0 : 0.0;
  }
  double obj = 0.0;
  for (const LpTerm& t : model.objective_terms())
    obj += t.coef * incumbent.assignment.at(model.variables()[t.var].name);
  incumbent.objective_value = obj;
  return incumbent;
}

std::string export_lp_text(const LpModel& model) {
  std::string out;
  out += model.objective_sense() == Sense::maximize ? "Maximize\n" : "Minimize\n";
  auto append_terms = [&](const std::vector<LpTerm>& terms) {
    bool first = true;
    for (const LpTerm& t : terms) {
      double c = t.coef;
      if (first) {
        if (c < 0) {
          out += "- ";
          c = -c;
        }
        first = false;
      } else {
        out += c < 0 ? " - " : " + ";
        c = std::abs(c);
      }
      out += format_double(c);
      out += ' ';
      out += model.variables()[t.var].name;
    }
    if (first) out += "0";
  };

  out += " obj: ";
  append_terms(model.objective_terms());
  out += "\nSubject To\n";
  int ci = 0;
  for (const LpConstraint& c : model.constraints()) {
    out += " c" + std::to_string(ci++) + ": ";
    append_terms(c.terms);
    switch (c.rel) {
      case Relation::less_equal:
        out += " <= ";
        break;
      case Relation::greater_equal:
        out += " >= ";
        break;
      case Relation::equal:
        out += " = ";
        break;
    }
    out += format_double(c.rhs);
    out += '\n';
  }

  std::string bounds;
  for (const LpVariable& v : model.variables()) {
    if (v.kind == VarKind::binary) continue;
    if (v.lower == 0.0 && v.upper == kInfinity) continue;
    bounds += ' ';
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      bounds += v.name + " free";
    } else if (v.lower == -kInfinity) {
      bounds += v.name + " <= " + format_double(v.upper);
    } else if (v.upper == kInfinity) {
      bounds += v.name + " >= " + format_double(v.lower);
    } else {
      bounds += format_double(v.lower) + " <= " + v.name + " <= " +
                format_double(v.upper);
    }
    bounds += '\n';
  }
  if (!bounds.empty()) {
    out += "Bounds\n";
    out += bounds;
  }

  std::string bins;
  for (const LpVariable& v : model.variables())
    if (v.kind == VarKind::binary) bins += ' ' + v.name + '\n';
  if (!bins.empty()) {
    out += "Binaries\n";
    out += bins;
  }
  out += "End\n";
  return out;
}

}  // namespace te
