#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "te/errors.hpp"

namespace te {

enum class VarKind { continuous, binary };
enum class Relation { less_equal, equal, greater_equal };
enum class Sense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  VarKind kind = VarKind::continuous;
};

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpConstraint {
  std::vector<LpTerm> terms;
  Relation rel = Relation::less_equal;
  double rhs = 0.0;
};

// Sparse LP/MILP container. Variable names are unique; binary variables are
// clamped to [0, 1].
class LpModel {
 public:
  int add_variable(const std::string& name, double lower, double upper,
                   VarKind kind = VarKind::continuous);
  void add_constraint(std::vector<LpTerm> terms, Relation rel, double rhs);
  void set_objective(Sense sense, std::vector<LpTerm> terms);

  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpConstraint>& constraints() const { return cons_; }
  Sense objective_sense() const { return sense_; }
  const std::vector<LpTerm>& objective_terms() const { return objective_; }

  int variable_index(std::string_view name) const;  // -1 when absent
  bool has_binaries() const;

 private:
  std::vector<LpVariable> vars_;
  std::unordered_map<std::string, int> index_;
  std::vector<LpConstraint> cons_;
  Sense sense_ = Sense::minimize;
  std::vector<LpTerm> objective_;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective_value = std::numeric_limits<double>::quiet_NaN();
  std::unordered_map<std::string, double> assignment;

  double value(std::string_view name) const;
};

// Optional observability for branch-and-bound runs.
struct MilpStats {
  long nodes_explored = 0;
  double best_bound = std::numeric_limits<double>::quiet_NaN();
  double heuristic_objective = std::numeric_limits<double>::quiet_NaN();
};

struct MilpOptions {
  long node_limit = 1'000'000;
  MilpStats* stats = nullptr;
};

// Two-phase primal simplex (dense, bounded variables, Dantzig pricing with a
// Bland fallback after degenerate stretches). The model must not contain
// binary variables.
LpSolution solve_lp(const LpModel& model);

// Branch and bound over the binary variables: best-first on the relaxation
// bound, branching on the most fractional binary (ties to the lowest index).
LpSolution solve_milp(const LpModel& model, const MilpOptions& opts = {});

// Serializes the model in the conventional LP interchange format.
std::string export_lp_text(const LpModel& model);

}  // namespace te
