#include "te/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <tuple>

#include "json.hpp"

namespace te {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Everything that identifies an instance except the contrasted dimension.
using PairKey =
    std::tuple<int, int, int, std::string, int, double, std::string>;

PairKey pair_key(const InstanceRecord& r) {
  return {r.n, r.l, r.topo_index, r.tm_type, r.tm_index, r.network_load,
          r.routing_strategy};
}

}  // namespace

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / values.size();
}

double median_of(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  size_t mid = values.size() / 2;
  if (values.size() % 2) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

GapMatrix analyze_gap(const std::vector<InstanceRecord>& records, int k_lo,
                      int k_hi, const std::string& objective) {
  std::map<PairKey, std::pair<std::vector<double>, std::vector<double>>> by_key;
  for (const InstanceRecord& r : records) {
    if (r.status != "optimal" || r.obj_type != objective) continue;
    if (r.k == k_lo) by_key[pair_key(r)].first.push_back(r.obj_val);
    if (r.k == k_hi) by_key[pair_key(r)].second.push_back(r.obj_val);
  }

  GapMatrix out;
  std::map<std::pair<int, int>, std::vector<double>> cell_gaps;
  for (const auto& [key, opts] : by_key) {
    const auto& [lo_vals, hi_vals] = opts;
    std::pair<int, int> cell{std::get<0>(key), std::get<1>(key)};
    cell_gaps.try_emplace(cell);
    // A well-formed dataset has exactly one record per (key, k); zip what is
    // there so re-run duplicates do not crash the analysis.
    for (size_t i = 0; i < lo_vals.size() && i < hi_vals.size(); ++i) {
      double opt1 = lo_vals[i], opt2 = hi_vals[i];
      if (opt1 == 0.0) {
        ++out.excluded_zero_opt;
        continue;
      }
      cell_gaps[cell].push_back(100.0 * (opt1 - opt2) / opt1);
    }
  }
  if (cell_gaps.empty())
    throw MissingPairs("no record pairs at k=" + std::to_string(k_lo) +
                       " and k=" + std::to_string(k_hi) + " for objective " +
                       objective);

  for (const auto& [cell, gaps] : cell_gaps) {
    if (std::find(out.ns.begin(), out.ns.end(), cell.first) == out.ns.end())
      out.ns.push_back(cell.first);
    if (std::find(out.ls.begin(), out.ls.end(), cell.second) == out.ls.end())
      out.ls.push_back(cell.second);
  }
  std::sort(out.ns.begin(), out.ns.end());
  std::sort(out.ls.begin(), out.ls.end());
  out.mean_gap_pct.assign(out.ns.size(),
                          std::vector<double>(out.ls.size(), 0.0));
  out.pair_counts.assign(out.ns.size(), std::vector<int>(out.ls.size(), 0));
  for (const auto& [cell, gaps] : cell_gaps) {
    size_t ni = std::find(out.ns.begin(), out.ns.end(), cell.first) -
                out.ns.begin();
    size_t li = std::find(out.ls.begin(), out.ls.end(), cell.second) -
                out.ls.begin();
    if (gaps.empty())
      throw MissingPairs("cell n=" + std::to_string(cell.first) +
                         " l=" + std::to_string(cell.second) +
                         " has no usable pairs");
    out.mean_gap_pct[ni][li] = mean_of(gaps);
    out.pair_counts[ni][li] = static_cast<int>(gaps.size());
  }
  return out;
}

PathFlowStats analyze_pathflow(const std::vector<InstanceRecord>& records,
                               const std::string& objective) {
  std::vector<std::vector<double>> samples;
  for (const InstanceRecord& r : records) {
    if (r.status != "optimal" || r.obj_type != objective) continue;
    if (samples.size() < r.flow_agg.size()) samples.resize(r.flow_agg.size());
    for (size_t i = 0; i < r.flow_agg.size(); ++i)
      samples[i].push_back(r.flow_agg[i]);
  }
  if (samples.empty())
    throw EmptySelection("no optimal records for objective " + objective);

  PathFlowStats out;
  for (size_t i = 0; i < samples.size(); ++i) {
    const auto& vals = samples[i];
    PathIndexStats s;
    s.path_index = static_cast<int>(i + 1);
    s.count = static_cast<long>(vals.size());
    s.mean = mean_of(vals);
    double var = 0.0;
    for (double v : vals) var += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(var / vals.size());
    s.min = *std::min_element(vals.begin(), vals.end());
    s.max = *std::max_element(vals.begin(), vals.end());
    out.per_index.push_back(s);
  }
  return out;
}

ResidualGapSeries analyze_residual_gap(
    const std::vector<InstanceRecord>& records) {
  // Key: identical instance except the routing strategy.
  using Key = std::tuple<int, int, int, std::string, int, double, std::string,
                         int>;
  struct Sides {
    std::vector<const InstanceRecord*> multi, single;
  };
  std::map<Key, Sides> by_key;
  for (const InstanceRecord& r : records) {
    if (r.status != "optimal") continue;
    Key key{r.n,          r.l,        r.topo_index, r.tm_type,
            r.tm_index,   r.network_load, r.obj_type, r.k};
    if (r.routing_strategy == "MULTIPATH")
      by_key[key].multi.push_back(&r);
    else if (r.routing_strategy == "SINGLEPATH")
      by_key[key].single.push_back(&r);
  }

  std::map<int, ResidualGapPoint> by_l;
  for (const auto& [key, sides] : by_key) {
    for (size_t i = 0; i < sides.multi.size() && i < sides.single.size();
         ++i) {
      const InstanceRecord* mp = sides.multi[i];
      const InstanceRecord* sp = sides.single[i];
      ResidualGapPoint& point = by_l[mp->l];
      point.l = mp->l;
      point.gaps.push_back(mp->residual_cap - sp->residual_cap);
      if (mp->obj_type == "LB")
        point.lb_objectives.emplace_back(mp->obj_val, sp->obj_val);
    }
  }
  if (by_l.empty())
    throw MissingPairs("no multipath/single-path record pairs");

  ResidualGapSeries out;
  for (auto& [l, point] : by_l) out.per_l.push_back(std::move(point));
  return out;
}

std::string export_gap_csv(const GapMatrix& gap) {
  std::string out = "n,l,mean_gap_pct\n";
  for (size_t ni = 0; ni < gap.ns.size(); ++ni)
    for (size_t li = 0; li < gap.ls.size(); ++li) {
      if (gap.pair_counts[ni][li] == 0) continue;
      out += std::to_string(gap.ns[ni]) + "," + std::to_string(gap.ls[li]) +
             "," + format_double(gap.mean_gap_pct[ni][li]) + "\n";
    }
  return out;
}

std::string export_gap_json(const GapMatrix& gap) {
  ordered_json rows = ordered_json::array();
  for (size_t ni = 0; ni < gap.ns.size(); ++ni)
    for (size_t li = 0; li < gap.ls.size(); ++li) {
      if (gap.pair_counts[ni][li] == 0) continue;
      rows.push_back({{"n", gap.ns[ni]},
                      {"l", gap.ls[li]},
                      {"mean_gap_pct", gap.mean_gap_pct[ni][li]}});
    }
  return rows.dump(2) + "\n";
}

std::string export_pathflow_csv(const PathFlowStats& stats) {
  std::string out = "path_index,mean,std,min,max\n";
  for (const PathIndexStats& s : stats.per_index)
    out += std::to_string(s.path_index) + "," + format_double(s.mean) + "," +
           format_double(s.stddev) + "," + format_double(s.min) + "," +
           format_double(s.max) + "\n";
  return out;
}

std::string export_pathflow_json(const PathFlowStats& stats) {
  ordered_json rows = ordered_json::array();
  for (const PathIndexStats& s : stats.per_index)
    rows.push_back({{"path_index", s.path_index},
                    {"mean", s.mean},
                    {"std", s.stddev},
                    {"min", s.min},
                    {"max", s.max}});
  return rows.dump(2) + "\n";
}

namespace {

struct ResidualRow {
  int l;
  int pair_count;
  double mean_gap;
  double median_gap;
  double mean_lb_obj_rel_diff_pct;  // NaN when no LB pairs in the bucket
};

ResidualRow residual_row(const ResidualGapPoint& point) {
  ResidualRow row;
  row.l = point.l;
  row.pair_count = static_cast<int>(point.gaps.size());
  row.mean_gap = mean_of(point.gaps);
  row.median_gap = median_of(point.gaps);
  std::vector<double> rel;
  for (const auto& [multi, single] : point.lb_objectives)
    if (multi != 0.0) rel.push_back(100.0 * std::abs(single - multi) / multi);
  row.mean_lb_obj_rel_diff_pct = mean_of(rel);
  return row;
}

}  // namespace

std::string export_residualgap_csv(const ResidualGapSeries& series) {
  std::string out = "l,pair_count,mean_gap,median_gap,mean_lb_obj_rel_diff_pct\n";
  for (const ResidualGapPoint& point : series.per_l) {
    ResidualRow row = residual_row(point);
    out += std::to_string(row.l) + "," + std::to_string(row.pair_count) + "," +
           format_double(row.mean_gap) + "," + format_double(row.median_gap) +
           "," +
           (std::isnan(row.mean_lb_obj_rel_diff_pct)
                ? ""
                : format_double(row.mean_lb_obj_rel_diff_pct)) +
           "\n";
  }
  return out;
}

std::string export_residualgap_json(const ResidualGapSeries& series) {
  ordered_json rows = ordered_json::array();
  for (const ResidualGapPoint& point : series.per_l) {
    ResidualRow row = residual_row(point);
    rows.push_back({{"l", row.l},
                    {"pair_count", row.pair_count},
                    {"mean_gap", row.mean_gap},
                    {"median_gap", row.median_gap},
                    {"mean_lb_obj_rel_diff_pct", row.mean_lb_obj_rel_diff_pct}});
  }
  return rows.dump(2) + "\n";
}

}  // namespace te
