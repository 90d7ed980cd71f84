#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "volcusum/panel.hpp"

namespace volcusum {

/// Break estimate: the first `index` days (1-based count) form the pre-change
/// regime and theta = index / N.
struct ChangePointEstimate {
  double theta = 0.0;
  std::size_t index = 0;
};

/// Smallest maximiser of the squared CUSUM norm over n = 1..N.
ChangePointEstimate shape_changepoint(const StdQVPanel& f);
ChangePointEstimate total_changepoint(const LogTotalQV& lq);

/// p-value weighted combination (p1 theta2 + p2 theta1) / (p1 + p2): the test
/// with the smaller p-value pulls the estimate towards its own estimator.
double pooled_changepoint(double theta_shape, double theta_total, double p_shape,
                          double p_total);

/// 1-based day index ceil(theta N) used to attach a date to a fractional estimate.
std::size_t changepoint_day(double theta, std::size_t days);

}  // namespace volcusum
