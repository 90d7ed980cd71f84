#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "volcusum/dgp.hpp"
#include "volcusum/inference.hpp"

namespace volcusum {

enum class LimitMode {
  /// One table of int B^2 draws per experiment, shared by all replications.
  SharedTable,
  /// Fresh limit draws inside every replication (r * B * J normals each).
  Fresh,
};

struct ExperimentOptions {
  std::size_t reps = 1000;
  std::size_t draws = kDefaultDraws;
  std::size_t series_terms = kDefaultSeriesTerms;
  double eigen_threshold = 0.95;
  LimitMode limit_mode = LimitMode::SharedTable;
  unsigned threads = 0;  // 0: std::thread::hardware_concurrency()
};

/// Result of one simulated panel.
struct ReplicationOutcome {
  double p_shape = 1.0;
  double p_total = 1.0;
  double p_global = 1.0;
  double fisher_statistic = 0.0;
  double theta_shape = 0.0;
  double theta_total = 0.0;
  double theta_pooled = 0.0;
  std::size_t components = 0;  // retained eigenvalues B
};

/// Runs `opts.reps` independent replications of `cfg`. Replication i uses
/// streams derived from (cfg.seed, i) only, so the output is identical for any
/// thread count.
std::vector<ReplicationOutcome> run_replications(const ScenarioConfig& cfg,
                                                 const ExperimentOptions& opts);

struct RejectionRow {
  double level = 0.05;
  double shape = 0.0;
  double total = 0.0;
  double global = 0.0;
};

struct RejectionTable {
  ScenarioConfig scenario;
  std::size_t reps = 0;
  std::vector<RejectionRow> rows;
};

/// Fraction of replications with p <= level, per test and level.
RejectionTable rejection_rates(const ScenarioConfig& cfg, std::size_t reps,
                               const std::vector<ReplicationOutcome>& outcomes,
                               const std::vector<double>& levels);

/// Empirical size at the given levels (defaults 10%, 5%, 1%).
RejectionTable run_size_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opts,
                                   const std::vector<double>& levels = {0.10, 0.05, 0.01});

/// Empirical power; cfg should describe an alternative.
RejectionTable run_power_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opts,
                                    const std::vector<double>& levels = {0.05});

enum class EstimatorKind { Shape, Total, Pooled };

/// The estimator each alternative is designed for: shape for HA1, total for
/// HA2, pooled otherwise.
EstimatorKind natural_estimator(Hypothesis h);

/// theta estimates over `opts.reps` replications.
std::vector<double> estimator_distribution(const ScenarioConfig& cfg,
                                           const ExperimentOptions& opts,
                                           EstimatorKind kind);
std::vector<double> estimator_distribution(const ScenarioConfig& cfg,
                                           const ExperimentOptions& opts);

}  // namespace volcusum
