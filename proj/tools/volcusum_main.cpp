// volcusum: detect breaks in the intraday volatility pattern of a price panel.
//
//   volcusum test     --input prices.csv [--alpha 0.05] [--out report.json]
//   volcusum segment  --input prices.csv [--min-seg 30]
//   volcusum simulate --scenario size|power|estimator|panel [...]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "volcusum/dgp.hpp"
#include "volcusum/error.hpp"
#include "volcusum/experiment.hpp"
#include "volcusum/price_csv.hpp"
#include "volcusum/report.hpp"
#include "volcusum/segmentation.hpp"
#include "volcusum/version.hpp"

namespace {

using namespace volcusum;
using nlohmann::json;

struct SimulateArgs {
  std::string scenario = "size";
  std::string hypothesis;
  std::string shape = "flat";
  std::vector<std::size_t> n{100};
  std::vector<std::size_t> k{26};
  std::vector<double> theta{0.5};
  std::vector<double> levels;
  std::size_t reps = 1000;
  bool fresh_limit = false;
  unsigned threads = 0;
};

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + out_path + "'");
  out << text;
}

void add_test_options(CLI::App* cmd, AnalysisConfig& cfg, std::string& out) {
  cmd->add_option("--input", cfg.input, "Wide price CSV: date,p0,...,pK")->required();
  cmd->add_option("--alpha", cfg.test.alpha, "Significance level")->capture_default_str();
  cmd->add_option("--draws", cfg.test.draws, "Limit-distribution draws r")->capture_default_str();
  cmd->add_option("--series-j", cfg.test.series_terms, "Brownian-bridge series truncation J")
      ->capture_default_str();
  cmd->add_option("--eigen-threshold", cfg.test.eigen_threshold,
                  "Explained-variance share for the retained eigenvalues")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.test.seed, "Master seed")->capture_default_str();
  cmd->add_option("--out", out, "Output file (default stdout)");
}

ScenarioConfig make_scenario(const SimulateArgs& args, Hypothesis h, std::size_t n,
                             std::size_t k, double theta, std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.hypothesis = h;
  cfg.days = n;
  cfg.intervals = k;
  cfg.theta = theta;
  cfg.seed = seed;
  // Alternatives start from the flat shape and GChange from the U-shape
  // unless a shape was given explicitly.
  if (h == Hypothesis::H0 || !args.shape.empty()) cfg.shape = SigmaShape::by_name(args.shape);
  return cfg;
}

int run_simulate(const SimulateArgs& args, const AnalysisConfig& base, const std::string& out,
                 const std::vector<std::string>& raw_args, bool shape_given) {
  const std::string& scenario = args.scenario;
  std::string hyp_name = args.hypothesis;
  if (hyp_name.empty()) hyp_name = scenario == "size" ? "h0" : "ha1";
  const Hypothesis h = hypothesis_from_string(hyp_name);
  SimulateArgs effective = args;
  if (!shape_given && h != Hypothesis::H0) effective.shape.clear();

  ExperimentOptions opts;
  opts.reps = args.reps;
  opts.draws = base.test.draws;
  opts.series_terms = base.test.series_terms;
  opts.eigen_threshold = base.test.eigen_threshold;
  opts.limit_mode = args.fresh_limit ? LimitMode::Fresh : LimitMode::SharedTable;
  opts.threads = args.threads;

  std::ostringstream text;
  if (scenario == "size" || scenario == "power") {
    std::vector<double> levels = args.levels;
    if (levels.empty()) levels = scenario == "size" ? std::vector<double>{0.10, 0.05, 0.01}
                                                    : std::vector<double>{0.05};
    std::vector<RejectionTable> tables;
    for (double theta : args.theta) {
      for (std::size_t n : args.n) {
        for (std::size_t k : args.k) {
          const ScenarioConfig cfg = make_scenario(effective, h, n, k, theta, base.test.seed);
          tables.push_back(scenario == "size" ? run_size_experiment(cfg, opts, levels)
                                              : run_power_experiment(cfg, opts, levels));
        }
      }
    }
    write_rejection_csv(text, scenario, tables);
  } else if (scenario == "estimator") {
    const ScenarioConfig cfg = make_scenario(effective, h, args.n.front(), args.k.front(),
                                             args.theta.front(), base.test.seed);
    write_replications_csv(text, run_replications(cfg, opts));
  } else if (scenario == "panel") {
    const ScenarioConfig cfg = make_scenario(effective, h, args.n.front(), args.k.front(),
                                             args.theta.front(), base.test.seed);
    write_price_csv(text, prices_from_returns(generate_panel(cfg)));
  } else {
    throw Error(ErrorKind::Config, "unknown scenario '" + scenario +
                                       "' (expected size, power, estimator or panel)");
  }
  emit(out, text.str());

  if (!out.empty() && out != "-") {
    json meta{{"tool", {{"name", "volcusum"}, {"version", kVersion}}},
              {"scenario", scenario},
              {"hypothesis", hyp_name},
              {"seed", base.test.seed},
              {"reps", args.reps},
              {"draws", base.test.draws},
              {"series_j", base.test.series_terms},
              {"eigen_threshold", base.test.eigen_threshold},
              {"limit_mode", args.fresh_limit ? "fresh" : "shared_table"},
              {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)},
              {"arguments", raw_args}};
    emit(out + ".meta.json", meta.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural breaks in intraday volatility curves"};
  app.set_version_flag("--version", std::string(volcusum::kVersion));
  app.require_subcommand(1);

  AnalysisConfig test_cfg;
  std::string test_out;
  std::string objective_out;
  auto* test_cmd = app.add_subcommand("test", "Run the shape, total-volatility and global tests");
  add_test_options(test_cmd, test_cfg, test_out);
  test_cmd->add_option("--objective-out", objective_out,
                       "Also write the CUSUM objective paths as CSV");

  AnalysisConfig seg_cfg;
  seg_cfg.mode = "segment";
  std::string seg_out;
  auto* seg_cmd = app.add_subcommand("segment", "Binary segmentation with the global test");
  add_test_options(seg_cmd, seg_cfg, seg_out);
  seg_cmd->add_option("--min-seg", seg_cfg.min_seg, "Minimum days between breaks")
      ->capture_default_str();

  AnalysisConfig sim_cfg;
  sim_cfg.mode = "simulate";
  sim_cfg.test.seed = 1;
  SimulateArgs sim;
  std::string sim_out;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo size/power/estimator experiments");
  sim_cmd->add_option("--scenario", sim.scenario, "size | power | estimator | panel")
      ->capture_default_str();
  sim_cmd->add_option("--hypothesis", sim.hypothesis,
                      "h0 | ha1 | ha2 | ha3 | gchange (default h0 for size, ha1 otherwise)");
  auto* shape_opt =
      sim_cmd->add_option("--shape", sim.shape, "flat | slope | sine | ushape")->capture_default_str();
  sim_cmd->add_option("--n", sim.n, "Days N (comma separated list)")->delimiter(',');
  sim_cmd->add_option("--k", sim.k, "Intraday intervals K (comma separated list)")->delimiter(',');
  sim_cmd->add_option("--theta", sim.theta, "Break fraction(s)")->delimiter(',');
  sim_cmd->add_option("--levels", sim.levels, "Significance levels")->delimiter(',');
  sim_cmd->add_option("--reps", sim.reps, "Replications")->capture_default_str();
  sim_cmd->add_option("--draws", sim_cfg.test.draws, "Limit-distribution draws r")
      ->capture_default_str();
  sim_cmd->add_option("--series-j", sim_cfg.test.series_terms, "Series truncation J")
      ->capture_default_str();
  sim_cmd->add_option("--eigen-threshold", sim_cfg.test.eigen_threshold,
                      "Explained-variance share")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_cfg.test.seed, "Master seed")->capture_default_str();
  sim_cmd->add_flag("--fresh-limit", sim.fresh_limit,
                    "Draw a fresh limit sample in every replication");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  sim_cmd->add_option("--out", sim_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    Error err(ErrorKind::Config, e.what());
    std::cout << error_json(err).dump(2) << "\n";
    return 2;
  }

  try {
    if (test_cmd->parsed()) {
      const PricePanel prices = ingest_prices(test_cfg.input);
      const AnalysisReport report = analyze(prices, test_cfg);
      emit(test_out, to_json(report).dump(2) + "\n");
      if (!objective_out.empty()) {
        std::ostringstream paths;
        write_objective_csv(paths, prices);
        emit(objective_out, paths.str());
      }
    } else if (seg_cmd->parsed()) {
      const PricePanel prices = ingest_prices(seg_cfg.input);
      SegmentationConfig cfg{seg_cfg.test, seg_cfg.min_seg};
      const SegmentationResult result = binary_segmentation(prices, cfg);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
      emit(seg_out, to_json(result, seg_cfg, prices).dump(2) + "\n");
    } else if (sim_cmd->parsed()) {
      sim_cfg.test.validate();
      return run_simulate(sim, sim_cfg, sim_out, std::vector<std::string>(argv + 1, argv + argc),
                          shape_opt->count() > 0);
    }
  } catch (const Error& e) {
    std::cout << error_json(e).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cout << error_json(Error(ErrorKind::Config, e.what())).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
