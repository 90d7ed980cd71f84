#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "volcusum/error.hpp"
#include "volcusum/experiment.hpp"
#include "volcusum/inference.hpp"
#include "volcusum/panel.hpp"
#include "volcusum/segmentation.hpp"

namespace volcusum {

struct AnalysisConfig {
  std::string input;
  TestConfig test;
  std::size_t min_seg = 30;
  std::string mode = "test";  // test | segment | simulate
};

/// A located break: fractional estimate, 1-based day index ceil(theta N), and
/// that day's identifier (the last day of the pre-change regime).
struct DatedChangePoint {
  double theta = 0.0;
  std::size_t index = 0;
  std::string date;
};

/// Estimates are present only for tests that reject at the configured alpha.
struct ChangePointReport {
  std::optional<DatedChangePoint> shape;
  std::optional<DatedChangePoint> total;
  std::optional<DatedChangePoint> pooled;
  double p_shape = 1.0;
  double p_total = 1.0;
  double p_global = 1.0;
};

struct AnalysisReport {
  InferenceResult inference;
  ChangePointReport change_points;
  std::size_t days = 0;
  std::size_t intervals = 0;
  std::string first_day;
  std::string last_day;
  AnalysisConfig config;
  std::vector<std::string> warnings;
};

/// QV -> tests -> change points on one panel. Limit draws come from stream 0
/// of config.test.seed.
AnalysisReport analyze(const PricePanel& prices, const AnalysisConfig& config);
/// Same, ingesting config.input first.
AnalysisReport analyze(const AnalysisConfig& config);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const SegmentationResult& result, const AnalysisConfig& config,
                       const PricePanel& prices);
nlohmann::json error_json(const Error& error);
nlohmann::json config_json(const AnalysisConfig& config);

/// Process exit status for an error kind: 2 parse/config, 3 degenerate.
int exit_code(ErrorKind kind);

/// Rejection-rate table, one row per (cell, level):
/// scenario,hypothesis,shape,n,k,theta,reps,level,shape_test,total_test,global_test
void write_rejection_csv(std::ostream& out, const std::string& scenario,
                         const std::vector<RejectionTable>& tables);

/// Per-replication estimates: rep,theta_shape,theta_total,theta_pooled,p_shape,p_total,p_global
void write_replications_csv(std::ostream& out, const std::vector<ReplicationOutcome>& outcomes);

/// CUSUM objective paths of both tests: n,date,theta,shape_objective,total_objective
void write_objective_csv(std::ostream& out, const PricePanel& prices);

}  // namespace volcusum
