#include "volcusum/inference.hpp"

#include <string>

#include "volcusum/error.hpp"
#include "volcusum/qv.hpp"

namespace volcusum {

void TestConfig::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::Config, "alpha must lie in (0, 1]");
  }
  if (draws == 0) throw Error(ErrorKind::Config, "draw count r must be at least 1");
  if (series_terms == 0) throw Error(ErrorKind::Config, "series truncation J must be at least 1");
  if (!(eigen_threshold > 0.0 && eigen_threshold <= 1.0)) {
    throw Error(ErrorKind::Config, "eigen threshold must lie in (0, 1]");
  }
}

InferenceResult run_inference(const QVPanel& qv, double eigen_threshold,
                              LimitSampler& sampler) {
  const StdQVPanel f = standardized_qv(qv);
  const LogTotalQV lq = log_total_qv(qv);

  InferenceResult out;

  out.spectrum = eigen_spectrum(fde_covariance(f), eigen_threshold);
  out.shape.method = TestKind::Shape;
  out.shape.statistic = shape_statistic(f);
  out.shape.p_value = empirical_pvalue(out.shape.statistic, sampler.shape_limit(out.spectrum));
  out.shape.nuisance = out.spectrum;

  out.longrun = estimate_longrun_variance(
      std::span<const double>(lq.values.data(), lq.num_days()));
  out.total.method = TestKind::Total;
  out.total.statistic = total_statistic(lq);
  out.total.p_value =
      pvalue_total(out.total.statistic, out.longrun.value, sampler.bridge_limit());
  out.total.nuisance = out.longrun.value;

  out.global = fisher_combine(out.shape.p_value, out.total.p_value);

  out.shape_cp = shape_changepoint(f);
  out.total_cp = total_changepoint(lq);
  out.pooled_theta = pooled_changepoint(out.shape_cp.theta, out.total_cp.theta,
                                        out.shape.p_value, out.total.p_value);
  return out;
}

InferenceResult run_inference(const QVPanel& qv, const TestConfig& config,
                              std::uint64_t stream) {
  config.validate();
  FreshLimitSampler sampler(Philox(config.seed, stream), config.draws, config.series_terms);
  return run_inference(qv, config.eigen_threshold, sampler);
}

}  // namespace volcusum
