#pragma once

#include <cstddef>
#include <span>

namespace volcusum {

/// Details of a long-run variance estimate.
struct LongRunVariance {
  double value = 0.0;         // estimate, clamped at 0
  double ar_coefficient = 0.0;  // prewhitening AR(1) coefficient, |b| <= 0.97
  double bandwidth = 0.0;     // Newey-West (1994) automatic bandwidth
  std::size_t lag = 0;        // truncation lag of the Bartlett weights
  bool clamped = false;       // a negative raw estimate was set to 0
};

/// Long-run variance sum_h Cov(x_0, x_h) of a stationary series.
///
/// The demeaned series is prewhitened with an AR(1) fit b = gamma(1)/gamma(0),
/// a Bartlett-kernel HAC estimate with Newey-West automatic bandwidth is
/// computed on the residuals, and the result is recoloured by 1/(1-b)^2.
/// Requires at least 10 observations; a constant series gives 0.
LongRunVariance estimate_longrun_variance(std::span<const double> series);

inline double longrun_variance(std::span<const double> series) {
  return estimate_longrun_variance(series).value;
}

}  // namespace volcusum
