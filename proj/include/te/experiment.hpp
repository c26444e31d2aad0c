#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "te/formulation.hpp"
#include "te/topology.hpp"
#include "te/traffic.hpp"

namespace te {

struct ExperimentConfig {
  std::vector<int> node_counts;                     // N
  std::vector<int> link_pair_counts;                // L
  int tms_per_topo = 0;                             // Nu_of_TMs_Per_TOPO
  int topos_per_n_l = 0;                            // Nu_of_TOPOs_Per_N_L
  std::vector<std::string> capacity_type;           // {EDGE_BETWEENNESS}
  std::vector<double> capacity_set;
  std::vector<std::string> weight_setting;          // {INV_CAP}
  std::vector<TmModel> tm_types;
  std::vector<double> network_load;
  std::vector<Objective> objectives;
  std::vector<int> candidate_paths;
  std::vector<RoutingStrategy> routing_strategies;
  uint64_t master_seed = 0;
};

// One fully-resolved cell of the experiment grid, with seeds derived so the
// instance can be reproduced in isolation.
struct InstanceSpec {
  int n_index = 0, l_index = 0, topo_index = 0, tm_type_index = 0,
      tm_index = 0, load_index = 0, objective_index = 0, k_index = 0,
      strategy_index = 0;
  int n = 0;
  int link_pairs = 0;
  TmModel tm_type = TmModel::GRAVITY;
  double network_load = 0.0;
  Objective objective = Objective::LB;
  int k = 0;
  RoutingStrategy strategy = RoutingStrategy::MULTIPATH;
  uint64_t topo_seed = 0;
  uint64_t tm_seed = 0;
};

// One dataset row: the Table-1 fields plus run bookkeeping and the instance
// identity needed to pair rows during analysis.
struct InstanceRecord {
  int n = 0;
  int l = 0;
  double avg_nodal_degree = 0.0;
  double network_load = 0.0;
  std::string tm_type;
  std::string obj_type;
  double obj_val = 0.0;  // NaN unless status == "optimal"
  int k = 0;
  std::string routing_strategy;
  double residual_cap = 0.0;
  std::vector<std::pair<std::string, LinkLoad>> links;  // "u->v" keyed
  std::vector<double> flow_agg;                         // index i = path i+1
  std::string status;
  double solve_time = 0.0;
  int topo_index = 0;
  int tm_index = 0;
};

struct Dataset {
  ExperimentConfig config;
  std::vector<InstanceRecord> records;
};

// Shares configured topologies, traffic matrices and candidate path sets
// between instances that differ only downstream, computing each at most
// once. Values are pure functions of the derived seeds, so results do not
// depend on which worker computes them.
class SharedCache {
 public:
  std::shared_ptr<const Topology> topology(const ExperimentConfig& cfg,
                                           const InstanceSpec& spec);
  std::shared_ptr<const TrafficMatrix> scaled_tm(const ExperimentConfig& cfg,
                                                 const InstanceSpec& spec,
                                                 const Topology& topo);
  std::shared_ptr<const CandidatePathSet> paths(const ExperimentConfig& cfg,
                                                const InstanceSpec& spec,
                                                const Topology& topo,
                                                const TrafficMatrix& tm);

 private:
  template <typename T>
  using Memo =
      std::map<std::vector<int>, std::shared_future<std::shared_ptr<const T>>>;
  std::mutex mu_;
  Memo<Topology> topologies_;
  Memo<TrafficMatrix> tms_;
  Memo<CandidatePathSet> path_sets_;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::string& path);
std::string write_config_text(const ExperimentConfig& cfg);

std::vector<InstanceSpec> expand_instances(const ExperimentConfig& cfg);

InstanceRecord run_instance(const ExperimentConfig& cfg,
                            const InstanceSpec& spec);
InstanceRecord run_instance(const ExperimentConfig& cfg,
                            const InstanceSpec& spec, SharedCache& cache);

Dataset run_all(const ExperimentConfig& cfg, int workers);

void write_dataset_jsonl(const Dataset& dataset, const std::string& path);
void write_dataset_csv(const Dataset& dataset, const std::string& path);
std::vector<InstanceRecord> load_records_jsonl(const std::string& path);

std::string record_to_json_line(const InstanceRecord& record);

}  // namespace te
