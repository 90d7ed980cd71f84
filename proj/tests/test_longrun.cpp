#include <doctest.h>

#include <random>
#include <vector>

#include "volcusum/dgp.hpp"
#include "volcusum/error.hpp"
#include "volcusum/longrun.hpp"

using namespace volcusum;

TEST_CASE("long-run variance of white noise is the variance") {
  Philox g(21);
  std::normal_distribution<double> z;
  std::vector<double> x(100000);
  for (double& v : x) v = z(g);
  const auto lrv = estimate_longrun_variance(x);
  CHECK(std::abs(lrv.value - 1.0) <= 0.05);
  CHECK(std::abs(lrv.ar_coefficient) < 0.02);
  CHECK_FALSE(lrv.clamped);
}

TEST_CASE("long-run variance of 2 g for an AR(1) g") {
  // sigma^2 / (1 - phi)^2 scaled by 4: 4 * 0.25 / 0.45^2.
  const double truth = 4.0 * 0.25 / ((1.0 - 0.55) * (1.0 - 0.55));
  Philox g(22);
  const auto series = ar1_series(0.55, 0.25, 100000, g);
  std::vector<double> x;
  for (double v : series.values) x.push_back(2.0 * v);
  const auto lrv = estimate_longrun_variance(x);
  CHECK(std::abs(lrv.value / truth - 1.0) <= 0.05);
  CHECK(lrv.ar_coefficient == doctest::Approx(0.55).epsilon(0.05));
  CHECK(lrv.bandwidth > 0.0);
}

TEST_CASE("long-run variance edge cases") {
  std::vector<double> c(50, 3.25);
  CHECK(longrun_variance(c) == 0.0);
  std::vector<double> tiny(9, 1.0);
  CHECK_THROWS_AS(longrun_variance(tiny), Error);

  // A near unit-root series is prewhitened with the clamped coefficient.
  Philox g(23);
  const auto s = ar1_series(0.995, 1.0, 2000, g);
  const auto lrv = estimate_longrun_variance(s.values);
  CHECK(lrv.ar_coefficient <= 0.97);
  CHECK(lrv.value >= 0.0);
}
