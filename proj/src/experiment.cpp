#include "te/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "te/rng.hpp"

namespace te {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct RawValue {
  bool collection = false;
  std::vector<std::string> strings;
  std::vector<double> numbers;
  int line = 0;
};

void parse_item(const std::string& item, int line, RawValue* out) {
  if (item.empty()) throw ParseError("line " + std::to_string(line) +
                                     ": empty item");
  if (item.front() == '\'' || item.front() == '"') {
    if (item.size() < 2 || item.back() != item.front())
      throw ParseError("line " + std::to_string(line) +
                       ": unterminated string literal");
    out->strings.push_back(item.substr(1, item.size() - 2));
    return;
  }
  char* end = nullptr;
  double v = std::strtod(item.c_str(), &end);
  if (end != item.c_str() + item.size())
    throw ParseError("line " + std::to_string(line) + ": cannot parse '" +
                     item + "'");
  out->numbers.push_back(v);
}

RawValue parse_value(const std::string& text, int line) {
  RawValue out;
  out.line = line;
  std::string v = trim(text);
  if (v.empty())
    throw ParseError("line " + std::to_string(line) + ": missing value");
  if (v.front() == '{' || v.front() == '[') {
    char close = v.front() == '{' ? '}' : ']';
    if (v.back() != close)
      throw ParseError("line " + std::to_string(line) +
                       ": unterminated collection");
    out.collection = true;
    std::string inner = trim(v.substr(1, v.size() - 2));
    if (inner.empty()) return out;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ','))
      parse_item(trim(item), line, &out);
    return out;
  }
  parse_item(v, line, &out);
  return out;
}

int to_int(double v, const RawValue& raw, const std::string& key) {
  if (v != std::floor(v))
    throw ValidationError("key '" + key + "' (line " +
                          std::to_string(raw.line) +
                          ") expects integers, got " + format_double(v));
  return static_cast<int>(v);
}

const RawValue& require(const std::map<std::string, RawValue>& values,
                        const std::string& key) {
  auto it = values.find(key);
  if (it == values.end())
    throw ValidationError("missing required key '" + key + "'");
  return it->second;
}

std::vector<int> int_list(const RawValue& raw, const std::string& key) {
  if (!raw.strings.empty())
    throw ValidationError("key '" + key + "' expects numbers");
  std::vector<int> out;
  for (double v : raw.numbers) out.push_back(to_int(v, raw, key));
  return out;
}

std::vector<int> dedupe(std::vector<int> v) {
  std::vector<int> out;
  for (int x : v)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, RawValue> values;
  std::istringstream in(text);
  std::string linebuf;
  int lineno = 0;
  while (std::getline(in, linebuf)) {
    ++lineno;
    size_t hash = linebuf.find('#');
    if (hash != std::string::npos) linebuf.erase(hash);
    std::string line = trim(linebuf);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'key = value'");
    std::string key = lower(trim(line.substr(0, eq)));
    if (key.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty key");
    if (key == "nu_of_tms_per_n_l") key = "nu_of_tms_per_topo";
    if (values.count(key))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" +
                       key + "'");
    values.emplace(key, parse_value(line.substr(eq + 1), lineno));
  }

  static const std::vector<std::string> known = {
      "n",           "l",
      "nu_of_tms_per_topo", "nu_of_topos_per_n_l",
      "capacity_type",      "capacity_set",
      "weight_setting",     "tm_types",
      "network_load",       "objectives",
      "candidate_paths",    "routing_strategies",
      "master_seed"};
  for (const auto& [key, raw] : values)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("line " + std::to_string(raw.line) +
                       ": unknown key '" + key + "'");

  ExperimentConfig cfg;
  cfg.node_counts = dedupe(int_list(require(values, "n"), "N"));
  cfg.link_pair_counts = dedupe(int_list(require(values, "l"), "L"));
  {
    const RawValue& raw = require(values, "nu_of_tms_per_topo");
    if (raw.numbers.size() != 1)
      throw ValidationError("Nu_of_TMs_Per_TOPO expects a single integer");
    cfg.tms_per_topo = to_int(raw.numbers[0], raw, "Nu_of_TMs_Per_TOPO");
  }
  {
    const RawValue& raw = require(values, "nu_of_topos_per_n_l");
    if (raw.numbers.size() != 1)
      throw ValidationError("Nu_of_TOPOs_Per_N_L expects a single integer");
    cfg.topos_per_n_l = to_int(raw.numbers[0], raw, "Nu_of_TOPOs_Per_N_L");
  }
  cfg.capacity_type = require(values, "capacity_type").strings;
  cfg.capacity_set = require(values, "capacity_set").numbers;
  cfg.weight_setting = require(values, "weight_setting").strings;
  for (const std::string& s : require(values, "tm_types").strings)
    cfg.tm_types.push_back(tm_model_from_string(s));
  cfg.network_load = require(values, "network_load").numbers;
  for (const std::string& s : require(values, "objectives").strings)
    cfg.objectives.push_back(objective_from_string(s));
  cfg.candidate_paths =
      dedupe(int_list(require(values, "candidate_paths"), "candidate_paths"));
  for (const std::string& s : require(values, "routing_strategies").strings)
    cfg.routing_strategies.push_back(strategy_from_string(s));
  if (values.count("master_seed")) {
    const RawValue& raw = values.at("master_seed");
    if (raw.numbers.size() != 1 || raw.numbers[0] < 0)
      throw ValidationError("master_seed expects a single non-negative integer");
    cfg.master_seed = static_cast<uint64_t>(raw.numbers[0]);
  }

  // Bound checks; the parser itself guarantees only well-formedness.
  if (cfg.node_counts.empty()) throw ValidationError("N must be non-empty");
  if (cfg.link_pair_counts.empty())
    throw ValidationError("L must be non-empty");
  for (int n : cfg.node_counts)
    if (n < 2) throw ValidationError("node count must be >= 2, got " +
                                     std::to_string(n));
  for (int n : cfg.node_counts) {
    for (int l : cfg.link_pair_counts) {
      long max_pairs = static_cast<long>(n) * (n - 1) / 2;
      if (l < n - 1)
        throw ValidationError("L=" + std::to_string(l) +
                              " below the connectivity bound n-1=" +
                              std::to_string(n - 1) + " for N=" +
                              std::to_string(n));
      if (l > max_pairs)
        throw ValidationError("L=" + std::to_string(l) +
                              " exceeds n(n-1)/2=" + std::to_string(max_pairs) +
                              " pairs for N=" + std::to_string(n));
    }
  }
  if (cfg.tms_per_topo < 1)
    throw ValidationError("Nu_of_TMs_Per_TOPO must be >= 1");
  if (cfg.topos_per_n_l < 1)
    throw ValidationError("Nu_of_TOPOs_Per_N_L must be >= 1");
  if (cfg.capacity_type.empty())
    throw ValidationError("capacity_type must be non-empty");
  for (const std::string& t : cfg.capacity_type)
    if (t != "EDGE_BETWEENNESS")
      throw ValidationError("unsupported capacity_type '" + t + "'");
  if (cfg.capacity_set.empty())
    throw ValidationError("capacity_set must be non-empty");
  std::sort(cfg.capacity_set.begin(), cfg.capacity_set.end());
  for (size_t i = 0; i < cfg.capacity_set.size(); ++i) {
    if (cfg.capacity_set[i] <= 0)
      throw ValidationError("capacity_set values must be positive");
    if (i > 0 && cfg.capacity_set[i] == cfg.capacity_set[i - 1])
      throw ValidationError("capacity_set values must be distinct");
  }
  if (cfg.weight_setting.empty())
    throw ValidationError("weight_setting must be non-empty");
  for (const std::string& w : cfg.weight_setting)
    if (w != "INV_CAP")
      throw ValidationError("unsupported weight_setting '" + w + "'");
  if (cfg.tm_types.empty()) throw ValidationError("tm_types must be non-empty");
  if (cfg.network_load.empty())
    throw ValidationError("Network_Load must be non-empty");
  for (double u : cfg.network_load)
    if (u <= 0.0 || u > 1.0)
      throw ValidationError("Network_Load values must lie in (0, 1]");
  if (cfg.objectives.empty())
    throw ValidationError("objectives must be non-empty");
  if (cfg.candidate_paths.empty())
    throw ValidationError("candidate_paths must be non-empty");
  for (int k : cfg.candidate_paths)
    if (k < 1) throw ValidationError("candidate_paths values must be >= 1");
  if (cfg.routing_strategies.empty())
    throw ValidationError("routing_strategies must be non-empty");
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string write_config_text(const ExperimentConfig& cfg) {
  auto join_ints = [](const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i)
      out += (i ? ", " : "") + std::to_string(v[i]);
    return out;
  };
  auto join_doubles = [](const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i)
      out += (i ? ", " : "") + format_double(v[i]);
    return out;
  };
  std::string out;
  out += "N = {" + join_ints(cfg.node_counts) + "}\n";
  out += "L = {" + join_ints(cfg.link_pair_counts) + "}\n";
  out += "Nu_of_TMs_Per_TOPO = " + std::to_string(cfg.tms_per_topo) + "\n";
  out += "Nu_of_TOPOs_Per_N_L = " + std::to_string(cfg.topos_per_n_l) + "\n";
  out += "capacity_type = {'EDGE_BETWEENNESS'}\n";
  out += "capacity_set = {" + join_doubles(cfg.capacity_set) + "}\n";
  out += "weight_setting = {'INV_CAP'}\n";
  std::string tms;
  for (size_t i = 0; i < cfg.tm_types.size(); ++i)
    tms += (i ? ", '" : "'") + to_string(cfg.tm_types[i]) + "'";
  out += "tm_types = {" + tms + "}\n";
  out += "Network_Load = [" + join_doubles(cfg.network_load) + "]\n";
  std::string objs;
  for (size_t i = 0; i < cfg.objectives.size(); ++i)
    objs += (i ? ", '" : "'") + to_string(cfg.objectives[i]) + "'";
  out += "objectives = {" + objs + "}\n";
  out += "candidate_paths = {" + join_ints(cfg.candidate_paths) + "}\n";
  std::string strats;
  for (size_t i = 0; i < cfg.routing_strategies.size(); ++i)
    strats += (i ? ", '" : "'") + to_string(cfg.routing_strategies[i]) + "'";
  out += "routing_strategies = {" + strats + "}\n";
  out += "master_seed = " + std::to_string(cfg.master_seed) + "\n";
  return out;
}

std::vector<InstanceSpec> expand_instances(const ExperimentConfig& cfg) {
  std::vector<InstanceSpec> specs;
  for (size_t ni = 0; ni < cfg.node_counts.size(); ++ni)
    for (size_t li = 0; li < cfg.link_pair_counts.size(); ++li)
      for (int ti = 0; ti < cfg.topos_per_n_l; ++ti)
        for (size_t mi = 0; mi < cfg.tm_types.size(); ++mi)
          for (int tmi = 0; tmi < cfg.tms_per_topo; ++tmi)
            for (size_t ui = 0; ui < cfg.network_load.size(); ++ui)
              for (size_t oi = 0; oi < cfg.objectives.size(); ++oi)
                for (size_t ki = 0; ki < cfg.candidate_paths.size(); ++ki)
                  for (size_t si = 0; si < cfg.routing_strategies.size();
                       ++si) {
                    InstanceSpec s;
                    s.n_index = static_cast<int>(ni);
                    s.l_index = static_cast<int>(li);
                    s.topo_index = ti;
                    s.tm_type_index = static_cast<int>(mi);
                    s.tm_index = tmi;
                    s.load_index = static_cast<int>(ui);
                    s.objective_index = static_cast<int>(oi);
                    s.k_index = static_cast<int>(ki);
                    s.strategy_index = static_cast<int>(si);
                    s.n = cfg.node_counts[ni];
                    s.link_pairs = cfg.link_pair_counts[li];
                    s.tm_type = cfg.tm_types[mi];
                    s.network_load = cfg.network_load[ui];
                    s.objective = cfg.objectives[oi];
                    s.k = cfg.candidate_paths[ki];
                    s.strategy = cfg.routing_strategies[si];
                    s.topo_seed = stable_hash(
                        {cfg.master_seed, 1, static_cast<uint64_t>(ni),
                         static_cast<uint64_t>(li), static_cast<uint64_t>(ti)});
                    s.tm_seed = stable_hash(
                        {cfg.master_seed, 2, static_cast<uint64_t>(ni),
                         static_cast<uint64_t>(li), static_cast<uint64_t>(ti),
                         static_cast<uint64_t>(mi),
                         static_cast<uint64_t>(tmi)});
                    specs.push_back(s);
                  }
  return specs;
}

namespace {

template <typename T, typename Fn>
std::shared_ptr<const T> memoize(
    std::mutex& mu,
    std::map<std::vector<int>,
             std::shared_future<std::shared_ptr<const T>>>& memo,
    std::vector<int> key, Fn&& compute) {
  std::promise<std::shared_ptr<const T>> promise;
  std::shared_future<std::shared_ptr<const T>> fut;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it == memo.end()) {
      fut = promise.get_future().share();
      memo.emplace(std::move(key), fut);
      owner = true;
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(compute());
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

TrafficMatrix make_tm(const Topology& topo, TmModel model, uint64_t seed) {
  switch (model) {
    case TmModel::GRAVITY:
      return gravity_tm(topo, seed);
    case TmModel::BIMODAL:
      return bimodal_tm(topo, seed);
    case TmModel::LOGNORMAL:
      return lognormal_tm(topo, seed);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::shared_ptr<const Topology> SharedCache::topology(
    const ExperimentConfig& cfg, const InstanceSpec& spec) {
  return memoize(mu_, topologies_,
                 {spec.n_index, spec.l_index, spec.topo_index}, [&] {
                   Topology t = generate_topology(spec.n, spec.link_pairs,
                                                  spec.topo_seed);
                   t = assign_capacities(t, cfg.capacity_set);
                   t = assign_weights(t, "INV_CAP");
                   return std::make_shared<const Topology>(std::move(t));
                 });
}

std::shared_ptr<const TrafficMatrix> SharedCache::scaled_tm(
    const ExperimentConfig& cfg, const InstanceSpec& spec,
    const Topology& topo) {
  (void)cfg;
  return memoize(mu_, tms_,
                 {spec.n_index, spec.l_index, spec.topo_index,
                  spec.tm_type_index, spec.tm_index, spec.load_index},
                 [&] {
                   TrafficMatrix tm =
                       make_tm(topo, spec.tm_type, spec.tm_seed);
                   tm = scale_to_max_utilization(tm, topo, spec.network_load);
                   return std::make_shared<const TrafficMatrix>(std::move(tm));
                 });
}

std::shared_ptr<const CandidatePathSet> SharedCache::paths(
    const ExperimentConfig& cfg, const InstanceSpec& spec,
    const Topology& topo, const TrafficMatrix& tm) {
  (void)cfg;
  return memoize(mu_, path_sets_,
                 {spec.n_index, spec.l_index, spec.topo_index, spec.k_index},
                 [&] {
                   return std::make_shared<const CandidatePathSet>(
                       build_candidate_paths(topo, tm, spec.k));
                 });
}

InstanceRecord run_instance(const ExperimentConfig& cfg,
                            const InstanceSpec& spec) {
  SharedCache cache;
  return run_instance(cfg, spec, cache);
}

InstanceRecord run_instance(const ExperimentConfig& cfg,
                            const InstanceSpec& spec, SharedCache& cache) {
  InstanceRecord rec;
  rec.n = spec.n;
  rec.l = spec.link_pairs;
  rec.network_load = spec.network_load;
  rec.tm_type = to_string(spec.tm_type);
  rec.obj_type = to_string(spec.objective);
  rec.obj_val = std::numeric_limits<double>::quiet_NaN();
  rec.k = spec.k;
  rec.routing_strategy = to_string(spec.strategy);
  rec.residual_cap = std::numeric_limits<double>::quiet_NaN();
  rec.topo_index = spec.topo_index;
  rec.tm_index = spec.tm_index;
  rec.avg_nodal_degree = 2.0 * spec.link_pairs / spec.n;

  try {
    auto topo = cache.topology(cfg, spec);
    auto tm = cache.scaled_tm(cfg, spec, *topo);
    auto paths = cache.paths(cfg, spec, *topo, *tm);

    LpModel model;
    switch (spec.objective) {
      case Objective::MCR:
        model = build_mcr(*paths, *tm, *topo);
        break;
      case Objective::LB:
        model = build_lb(*paths, *tm, *topo);
        break;
      case Objective::AD:
        model = build_ad(*paths, *tm, *topo);
        break;
    }
    if (spec.strategy == RoutingStrategy::SINGLEPATH)
      model = apply_single_path(std::move(model), *paths, *tm);

    auto t0 = std::chrono::steady_clock::now();
    LpSolution sol = spec.strategy == RoutingStrategy::SINGLEPATH
                         ? solve_milp(model)
                         : solve_lp(model);
    auto t1 = std::chrono::steady_clock::now();
    rec.solve_time = std::chrono::duration<double>(t1 - t0).count();

    if (sol.status != LpStatus::optimal) {
      rec.status =
          sol.status == LpStatus::infeasible ? "infeasible" : "unbounded";
      return rec;
    }

    DecodedSolution decoded = decode_solution(sol, *paths, *tm, *topo,
                                              spec.objective, spec.strategy);
    rec.status = "optimal";
    rec.obj_val = decoded.alloc.objective_value;
    rec.residual_cap = residual_capacity_pct(decoded.loads);
    rec.links.reserve(topo->links.size());
    for (size_t li = 0; li < topo->links.size(); ++li) {
      const Link& l = topo->links[li];
      rec.links.emplace_back(
          std::to_string(l.src) + "->" + std::to_string(l.dst),
          decoded.loads.per_link[li]);
    }
    rec.flow_agg = flow_agg_per_path(decoded.alloc);
  } catch (const DegenerateMatrix&) {
    rec.status = "degenerate_matrix";
  } catch (const ConnectivityFailure&) {
    rec.status = "connectivity_failure";
  } catch (const NodeLimitExceeded&) {
    rec.status = "node_limit_exceeded";
  } catch (const NumericalFailure&) {
    rec.status = "numerical_failure";
  }
  return rec;
}

Dataset run_all(const ExperimentConfig& cfg, int workers) {
  std::vector<InstanceSpec> specs = expand_instances(cfg);
  std::vector<InstanceRecord> records(specs.size());
  SharedCache cache;

  int nthreads = std::max(1, std::min<int>(workers, specs.size()));
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= specs.size()) break;
      try {
        records[i] = run_instance(cfg, specs[i], cache);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  return Dataset{cfg, std::move(records)};
}

namespace {

ordered_json record_to_json(const InstanceRecord& rec) {
  ordered_json j;
  j["n"] = rec.n;
  j["l"] = rec.l;
  j["avg_nodal_degree"] = rec.avg_nodal_degree;
  j["network_load"] = rec.network_load;
  j["tm_type"] = rec.tm_type;
  j["obj_type"] = rec.obj_type;
  j["obj_val"] = rec.obj_val;
  j["k"] = rec.k;
  j["routing_strategy"] = rec.routing_strategy;
  j["residual_cap"] = rec.residual_cap;
  ordered_json links = ordered_json::object();
  for (const auto& [key, l] : rec.links) {
    links[key] = {{"load", l.load},
                  {"utilization", l.utilization},
                  {"residual", l.residual}};
  }
  j["links_utilization_and_residual"] = std::move(links);
  ordered_json agg = ordered_json::object();
  for (size_t i = 0; i < rec.flow_agg.size(); ++i)
    agg[std::to_string(i + 1)] = rec.flow_agg[i];
  j["flow_agg_per_path"] = std::move(agg);
  j["status"] = rec.status;
  j["solve_time"] = rec.solve_time;
  j["topo_index"] = rec.topo_index;
  j["tm_index"] = rec.tm_index;
  return j;
}

double json_double(const ordered_json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN()
                     : j.get<double>();
}

InstanceRecord record_from_json(const ordered_json& j) {
  InstanceRecord rec;
  rec.n = j.at("n").get<int>();
  rec.l = j.at("l").get<int>();
  rec.avg_nodal_degree = json_double(j.at("avg_nodal_degree"));
  rec.network_load = json_double(j.at("network_load"));
  rec.tm_type = j.at("tm_type").get<std::string>();
  rec.obj_type = j.at("obj_type").get<std::string>();
  rec.obj_val = json_double(j.at("obj_val"));
  rec.k = j.at("k").get<int>();
  rec.routing_strategy = j.at("routing_strategy").get<std::string>();
  rec.residual_cap = json_double(j.at("residual_cap"));
  for (const auto& [key, v] :
       j.at("links_utilization_and_residual").items()) {
    rec.links.emplace_back(
        key, LinkLoad{json_double(v.at("load")), json_double(v.at("utilization")),
                      json_double(v.at("residual"))});
  }
  const auto& agg = j.at("flow_agg_per_path");
  rec.flow_agg.resize(agg.size());
  for (const auto& [key, v] : agg.items()) {
    size_t idx = std::stoul(key);
    if (idx < 1 || idx > rec.flow_agg.size())
      throw ParseError("flow_agg_per_path index out of range");
    rec.flow_agg[idx - 1] = json_double(v);
  }
  rec.status = j.at("status").get<std::string>();
  rec.solve_time = json_double(j.at("solve_time"));
  rec.topo_index = j.at("topo_index").get<int>();
  rec.tm_index = j.at("tm_index").get<int>();
  return rec;
}

}  // namespace

std::string record_to_json_line(const InstanceRecord& record) {
  return record_to_json(record).dump();
}

void write_dataset_jsonl(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  for (const InstanceRecord& rec : dataset.records)
    out << record_to_json_line(rec) << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

void write_dataset_csv(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "n,l,avg_nodal_degree,network_load,tm_type,obj_type,obj_val,k,"
         "routing_strategy,residual_cap,status,solve_time,topo_index,"
         "tm_index\n";
  auto field = [](double v) {
    return std::isnan(v) ? std::string() : format_double(v);
  };
  for (const InstanceRecord& r : dataset.records) {
    out << r.n << ',' << r.l << ',' << field(r.avg_nodal_degree) << ','
        << field(r.network_load) << ',' << r.tm_type << ',' << r.obj_type
        << ',' << field(r.obj_val) << ',' << r.k << ',' << r.routing_strategy
        << ',' << field(r.residual_cap) << ',' << r.status << ','
        << field(r.solve_time) << ',' << r.topo_index << ',' << r.tm_index
        << '\n';
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<InstanceRecord> load_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  std::vector<InstanceRecord> records;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ParseError("line " + std::to_string(lineno) +
                       ": invalid JSON record");
    records.push_back(record_from_json(j));
  }
  return records;
}

}  // namespace te
