#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "volcusum/changepoint.hpp"
#include "volcusum/cusum.hpp"
#include "volcusum/limit.hpp"
#include "volcusum/longrun.hpp"
#include "volcusum/panel.hpp"

namespace volcusum {

/// Tuning shared by single-panel analysis, segmentation and experiments.
struct TestConfig {
  double alpha = 0.05;
  std::size_t draws = kDefaultDraws;              // r
  std::size_t series_terms = kDefaultSeriesTerms;  // J
  double eigen_threshold = 0.95;
  std::uint64_t seed = 0;

  /// Throws Error(Config) unless alpha in (0, 1], r, J >= 1 and the
  /// threshold lies in (0, 1].
  void validate() const;
};

/// Everything the three tests produce on one panel. Change point estimates are
/// always computed; callers decide whether to report them.
struct InferenceResult {
  TestReport shape;
  TestReport total;
  TestReport global;
  EigenSpectrum spectrum;
  LongRunVariance longrun;
  ChangePointEstimate shape_cp;
  ChangePointEstimate total_cp;
  double pooled_theta = 0.0;
};

/// Runs the shape, total-volatility and combined tests on a quadratic
/// variation panel, drawing limit samples from `sampler`.
InferenceResult run_inference(const QVPanel& qv, double eigen_threshold,
                              LimitSampler& sampler);

/// Convenience overload with fresh limit draws from stream `stream` of the
/// configured seed.
InferenceResult run_inference(const QVPanel& qv, const TestConfig& config,
                              std::uint64_t stream = 0);

}  // namespace volcusum
