#include "volcusum/longrun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

constexpr double kMaxArCoefficient = 0.97;

// Autocovariance at lag h with divisor n (biased, positive semidefinite).
double autocovariance(const std::vector<double>& x, std::size_t h) {
  double acc = 0.0;
  for (std::size_t t = 0; t + h < x.size(); ++t) acc += x[t] * x[t + h];
  return acc / static_cast<double>(x.size());
}

}  // namespace

LongRunVariance estimate_longrun_variance(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 10) {
    throw Error(ErrorKind::Config,
                "long-run variance needs at least 10 observations, got " + std::to_string(n));
  }
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = series[i] - mean;

  LongRunVariance out;
  const double gamma0 = autocovariance(x, 0);
  const double scale = std::max(1.0, mean * mean);
  if (!(gamma0 > 1e-300) || gamma0 <= 1e-28 * scale) return out;  // constant series

  const double b = std::clamp(autocovariance(x, 1) / gamma0, -kMaxArCoefficient,
                              kMaxArCoefficient);
  out.ar_coefficient = b;

  std::vector<double> resid(n - 1);
  for (std::size_t t = 1; t < n; ++t) resid[t - 1] = x[t] - b * x[t - 1];
  const std::size_t m = resid.size();

  // Newey-West (1994) bandwidth for the Bartlett kernel: preliminary lag
  // 3 (m/100)^(2/9) when prewhitened, then gamma = 1.1447 (s1/s0)^(2/3).
  const auto pre_lag = static_cast<std::size_t>(
      std::floor(3.0 * std::pow(static_cast<double>(m) / 100.0, 2.0 / 9.0)));
  double s0 = autocovariance(resid, 0);
  double s1 = 0.0;
  for (std::size_t j = 1; j <= std::min(pre_lag, m - 1); ++j) {
    const double sj = autocovariance(resid, j);
    s0 += 2.0 * sj;
    s1 += 2.0 * static_cast<double>(j) * sj;
  }
  double bandwidth = 0.0;
  if (s0 > 0.0) {
    bandwidth = 1.1447 * std::pow((s1 / s0) * (s1 / s0), 1.0 / 3.0) *
                std::pow(static_cast<double>(n), 1.0 / 3.0);
  }
  out.bandwidth = bandwidth;
  out.lag = std::min(static_cast<std::size_t>(std::floor(bandwidth)), m - 1);

  // Bartlett weights 1 - h/(L+1), h = 0..L.
  double omega = autocovariance(resid, 0);
  const double denom = static_cast<double>(out.lag + 1);
  for (std::size_t h = 1; h <= out.lag; ++h) {
    omega += 2.0 * (1.0 - static_cast<double>(h) / denom) * autocovariance(resid, h);
  }

  double value = omega / ((1.0 - b) * (1.0 - b));
  if (value < 0.0) {
    value = 0.0;
    out.clamped = true;
  }
  out.value = value;
  return out;
}

}  // namespace volcusum
