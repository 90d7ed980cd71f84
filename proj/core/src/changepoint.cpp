#include "volcusum/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "volcusum/cusum.hpp"
#include "volcusum/error.hpp"

namespace volcusum {

namespace {

ChangePointEstimate argmax_estimate(const std::vector<double>& objective) {
  if (objective.size() < 2) {
    throw Error(ErrorKind::Config, "change point estimation needs at least 2 days");
  }
  // max_element returns the first maximiser, i.e. the smallest index.
  const auto it = std::max_element(objective.begin(), objective.end());
  ChangePointEstimate out;
  out.index = static_cast<std::size_t>(it - objective.begin()) + 1;
  out.theta = static_cast<double>(out.index) / static_cast<double>(objective.size());
  return out;
}

}  // namespace

ChangePointEstimate shape_changepoint(const StdQVPanel& f) {
  if (f.num_days() < 2) {
    throw Error(ErrorKind::Config, "change point estimation needs at least 2 days");
  }
  return argmax_estimate(cusum_objective(f.values));
}

ChangePointEstimate total_changepoint(const LogTotalQV& lq) {
  if (lq.num_days() < 2) {
    throw Error(ErrorKind::Config, "change point estimation needs at least 2 days");
  }
  return argmax_estimate(
      cusum_objective(std::span<const double>(lq.values.data(), lq.num_days())));
}

double pooled_changepoint(double theta_shape, double theta_total, double p_shape,
                          double p_total) {
  if (!(p_shape > 0.0) || !(p_total > 0.0)) {
    throw std::invalid_argument("pooled_changepoint: p-values must be positive");
  }
  const double pooled = (p_shape * theta_total + p_total * theta_shape) / (p_shape + p_total);
  // Keep the convex-combination bound exact under rounding.
  return std::clamp(pooled, std::min(theta_shape, theta_total),
                    std::max(theta_shape, theta_total));
}

std::size_t changepoint_day(double theta, std::size_t days) {
  const double raw = std::ceil(theta * static_cast<double>(days) - 1e-9);
  const auto idx = static_cast<std::size_t>(std::max(raw, 1.0));
  return std::min(idx, days);
}

}  // namespace volcusum
