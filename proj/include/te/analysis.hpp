#pragma once

#include <string>
#include <vector>

#include "te/experiment.hpp"

namespace te {

// Mean optimality gap 100 * (opt_klo - opt_khi) / opt_klo per (n, l) cell,
// over record pairs identical in everything but the path budget.
struct GapMatrix {
  std::vector<int> ns;
  std::vector<int> ls;
  std::vector<std::vector<double>> mean_gap_pct;  // [n index][l index]
  std::vector<std::vector<int>> pair_counts;
  int excluded_zero_opt = 0;  // pairs dropped because opt_klo == 0
};

struct PathIndexStats {
  int path_index = 0;  // 1-based
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double max = 0.0;
  long count = 0;
};

struct PathFlowStats {
  std::vector<PathIndexStats> per_index;
};

// Residual-capacity gap (multipath minus single-path) distributions keyed by
// link-pair count, with the paired LB objective values alongside.
struct ResidualGapPoint {
  int l = 0;
  std::vector<double> gaps;
  std::vector<std::pair<double, double>> lb_objectives;  // (multi, single)
};

struct ResidualGapSeries {
  std::vector<ResidualGapPoint> per_l;
};

GapMatrix analyze_gap(const std::vector<InstanceRecord>& records, int k_lo,
                      int k_hi, const std::string& objective);

PathFlowStats analyze_pathflow(const std::vector<InstanceRecord>& records,
                               const std::string& objective);

ResidualGapSeries analyze_residual_gap(
    const std::vector<InstanceRecord>& records);

double mean_of(const std::vector<double>& values);
double median_of(std::vector<double> values);

std::string export_gap_csv(const GapMatrix& gap);
std::string export_gap_json(const GapMatrix& gap);
std::string export_pathflow_csv(const PathFlowStats& stats);
std::string export_pathflow_json(const PathFlowStats& stats);
std::string export_residualgap_csv(const ResidualGapSeries& series);
std::string export_residualgap_json(const ResidualGapSeries& series);

}  // namespace te
