#include "volcusum/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "volcusum/error.hpp"
#include "volcusum/qv.hpp"

namespace volcusum {

namespace {

ReplicationOutcome replicate(const ScenarioConfig& cfg, const ExperimentOptions& opts,
                             std::size_t rep, const std::shared_ptr<LimitTable>& table) {
  Philox panel_rng(cfg.seed, streams::replication(rep, streams::kReplicationPanel));
  const QVPanel qv = realized_qv(generate_panel(cfg, panel_rng));

  InferenceResult result;
  if (table) {
    TableLimitSampler sampler(table);
    result = run_inference(qv, opts.eigen_threshold, sampler);
  } else {
    FreshLimitSampler sampler(
        Philox(cfg.seed, streams::replication(rep, streams::kReplicationLimit)), opts.draws,
        opts.series_terms);
    result = run_inference(qv, opts.eigen_threshold, sampler);
  }

  ReplicationOutcome out;
  out.p_shape = result.shape.p_value;
  out.p_total = result.total.p_value;
  out.p_global = result.global.p_value;
  out.fisher_statistic = result.global.statistic;
  out.theta_shape = result.shape_cp.theta;
  out.theta_total = result.total_cp.theta;
  out.theta_pooled = result.pooled_theta;
  out.components = result.spectrum.components();
  return out;
}

}  // namespace

std::vector<ReplicationOutcome> run_replications(const ScenarioConfig& cfg,
                                                 const ExperimentOptions& opts) {
  cfg.validate();
  if (opts.reps == 0) throw Error(ErrorKind::Config, "reps must be at least 1");
  if (opts.draws == 0 || opts.series_terms == 0) {
    throw Error(ErrorKind::Config, "draw count and series truncation must be at least 1");
  }

  std::shared_ptr<LimitTable> table;
  if (opts.limit_mode == LimitMode::SharedTable) {
    table = std::make_shared<LimitTable>(cfg.seed, opts.draws, opts.series_terms);
  }

  std::vector<ReplicationOutcome> outcomes(opts.reps);
  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(opts.reps)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t rep = next++; rep < opts.reps; rep = next++) {
      try {
        outcomes[rep] = replicate(cfg, opts, rep, table);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = opts.reps;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return outcomes;
}

RejectionTable rejection_rates(const ScenarioConfig& cfg, std::size_t reps,
                               const std::vector<ReplicationOutcome>& outcomes,
                               const std::vector<double>& levels) {
  RejectionTable table{cfg, reps, {}};
  const double n = static_cast<double>(outcomes.size());
  for (double level : levels) {
    RejectionRow row;
    row.level = level;
    for (const auto& o : outcomes) {
      row.shape += o.p_shape <= level ? 1.0 : 0.0;
      row.total += o.p_total <= level ? 1.0 : 0.0;
      row.global += o.p_global <= level ? 1.0 : 0.0;
    }
    row.shape /= n;
    row.total /= n;
    row.global /= n;
    table.rows.push_back(row);
  }
  return table;
}

RejectionTable run_size_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opts,
                                   const std::vector<double>& levels) {
  return rejection_rates(cfg, opts.reps, run_replications(cfg, opts), levels);
}

RejectionTable run_power_experiment(const ScenarioConfig& cfg, const ExperimentOptions& opts,
                                    const std::vector<double>& levels) {
  return rejection_rates(cfg, opts.reps, run_replications(cfg, opts), levels);
}

EstimatorKind natural_estimator(Hypothesis h) {
  switch (h) {
    case Hypothesis::HA1: return EstimatorKind::Shape;
    case Hypothesis::HA2: return EstimatorKind::Total;
    default: return EstimatorKind::Pooled;
  }
}

std::vector<double> estimator_distribution(const ScenarioConfig& cfg,
                                           const ExperimentOptions& opts,
                                           EstimatorKind kind) {
  const auto outcomes = run_replications(cfg, opts);
  std::vector<double> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    switch (kind) {
      case EstimatorKind::Shape: out.push_back(o.theta_shape); break;
      case EstimatorKind::Total: out.push_back(o.theta_total); break;
      case EstimatorKind::Pooled: out.push_back(o.theta_pooled); break;
    }
  }
  return out;
}

std::vector<double> estimator_distribution(const ScenarioConfig& cfg,
                                           const ExperimentOptions& opts) {
  return estimator_distribution(cfg, opts, natural_estimator(cfg.hypothesis));
}

}  // namespace volcusum
