#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "te/analysis.hpp"
#include "te/experiment.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int workers, bool seed_given, uint64_t seed) {
  te::ExperimentConfig cfg;
  try {
    cfg = te::parse_config(config_path);
  } catch (const te::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (seed_given) cfg.master_seed = seed;

  try {
    fs::create_directories(out_dir);
    te::Dataset dataset = te::run_all(cfg, workers);
    te::write_dataset_jsonl(dataset, (fs::path(out_dir) / "dataset.jsonl").string());
    te::write_dataset_csv(dataset, (fs::path(out_dir) / "dataset.csv").string());
    std::ofstream echo(fs::path(out_dir) / "config_echo.txt");
    echo << te::write_config_text(cfg);
    if (!echo) throw te::Error("failed writing config echo");

    size_t optimal = 0;
    for (const auto& r : dataset.records)
      if (r.status == "optimal") ++optimal;
    std::cout << dataset.records.size() << " instances (" << optimal
              << " optimal) -> " << out_dir << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

struct AnalyzeArgs {
  std::string dataset;
  std::string objective = "LB";
  int k_lo = 3;
  int k_hi = 7;
};

int run_analysis(const std::string& what, const AnalyzeArgs& args,
                 const std::string& format, std::ostream& out) {
  auto records = te::load_records_jsonl(args.dataset);
  if (what == "gap") {
    te::GapMatrix gap =
        te::analyze_gap(records, args.k_lo, args.k_hi, args.objective);
    out << (format == "json" ? te::export_gap_json(gap)
                             : te::export_gap_csv(gap));
  } else if (what == "pathflow") {
    te::PathFlowStats stats = te::analyze_pathflow(records, args.objective);
    out << (format == "json" ? te::export_pathflow_json(stats)
                             : te::export_pathflow_csv(stats));
  } else if (what == "residualgap") {
    te::ResidualGapSeries series = te::analyze_residual_gap(records);
    out << (format == "json" ? te::export_residualgap_json(series)
                             : te::export_residualgap_csv(series));
  } else {
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-driven traffic engineering experiment framework"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Expand a config and solve every instance");
  run->add_option("--config", config_path, "configuration file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--workers", workers, "max instances in flight");
  auto* seed_opt =
      run->add_option("--seed", seed, "override the config master seed");

  AnalyzeArgs analyze_args;
  auto* analyze =
      app.add_subcommand("analyze", "Print an analysis of a dataset");
  std::string analyze_what;
  analyze->add_option("what", analyze_what, "gap|pathflow|residualgap")
      ->required()
      ->check(CLI::IsMember({"gap", "pathflow", "residualgap"}));
  analyze->add_option("--dataset", analyze_args.dataset, "dataset.jsonl path")
      ->required();
  analyze->add_option("--objective", analyze_args.objective, "LB|AD|MCR");
  analyze->add_option("--k-lo", analyze_args.k_lo, "small path budget");
  analyze->add_option("--k-hi", analyze_args.k_hi, "large path budget");

  AnalyzeArgs export_args;
  std::string export_analysis, export_format, export_out;
  auto* exp = app.add_subcommand("export", "Write a plot-ready analysis table");
  exp->add_option("--analysis", export_analysis, "gap|pathflow|residualgap")
      ->required()
      ->check(CLI::IsMember({"gap", "pathflow", "residualgap"}));
  exp->add_option("--dataset", export_args.dataset, "dataset.jsonl path")
      ->required();
  exp->add_option("--format", export_format, "csv|json")
      ->required()
      ->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("--out", export_out, "output file")->required();
  exp->add_option("--objective", export_args.objective, "LB|AD|MCR");
  exp->add_option("--k-lo", export_args.k_lo, "small path budget");
  exp->add_option("--k-hi", export_args.k_hi, "large path budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed())
      return cmd_run(config_path, out_dir, workers, seed_opt->count() > 0,
                     seed);
    if (analyze->parsed())
      return run_analysis(analyze_what, analyze_args, "csv", std::cout);
    if (exp->parsed()) {
      std::ofstream out(export_out);
      if (!out) {
        std::cerr << "error: cannot open '" << export_out << "'\n";
        return 2;
      }
      return run_analysis(export_analysis, export_args, export_format, out);
    }
  } catch (const te::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const te::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
