#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volcusum/panel.hpp"
#include "volcusum/rng.hpp"
#include "volcusum/shape.hpp"

namespace volcusum {

/// Discretely observed Ito integral int_0^t sigma dW on t_k = k/K.
struct ItoPath {
  std::vector<double> increments;  // K Gaussian increments
  std::vector<double> path;        // K+1 values, path[0] = 0
};

/// Draws the increments as independent N(0, G(t_k) - G(t_{k-1})) variables,
/// which is exact by the Dambis-Dubins-Schwarz time change.
ItoPath ito_path(const TimeChange& clock, std::size_t intervals, Philox& rng);

/// Latent day-level log scale g_i = phi g_{i-1} + eps_i.
struct GFactorSeries {
  double phi = 0.0;
  double sigma_eps2 = 0.0;
  std::vector<double> values;
};

/// AR(1) started from its stationary law N(0, sigma_eps2 / (1 - phi^2)).
GFactorSeries ar1_series(double phi, double sigma_eps2, std::size_t days, Philox& rng);

enum class Hypothesis { H0, HA1, HA2, HA3, GChange };

const char* to_string(Hypothesis h);
Hypothesis hypothesis_from_string(const std::string& name);

/// Complete description of a synthetic panel.
///
/// H0 uses `shape` on every day. HA1..HA3 switch from flat 0.2 (or `shape`
/// when given) to the alternative's post-break shape after floor(N theta)
/// days. GChange keeps `shape` fixed (U-shape by default) and switches the AR
/// coefficient from `phi_before` to `phi_after` at floor(N/2).
struct ScenarioConfig {
  Hypothesis hypothesis = Hypothesis::H0;
  std::optional<SigmaShape> shape;        // pre-break / null shape
  std::optional<SigmaShape> after_shape;  // overrides the alternative's default
  std::size_t days = 500;
  std::size_t intervals = 78;
  double theta = 0.5;
  double phi = 0.55;
  double sigma_eps2 = 0.25;
  double phi_before = 0.45;  // GChange only
  double phi_after = 0.65;   // GChange only
  std::uint64_t seed = 0;

  void validate() const;

  SigmaShape before() const;
  SigmaShape after() const;
  /// Number of days generated under `before()`.
  std::size_t break_day() const;
};

/// Default post-break shapes of the three alternatives.
SigmaShape ha1_after_shape();  // 0.02 sin(2 pi u) + sqrt(199/5000), same total variance 0.04
SigmaShape ha2_after_shape();  // flat 0.4
/// (u - 0.5)^2 + 0.3, whose integrated variance is 0.1525.
SigmaShape ha3_after_shape();
/// (u - 0.5)^2 + 0.4 as a custom shape (integrated variance 0.2391667).
SigmaShape ha3_displayed_after_shape();

/// R_i(t_k) = exp(g_i) X_i(t_k), generated from stream 0 of `cfg.seed`.
ReturnPanel generate_panel(const ScenarioConfig& cfg);
/// Same, drawing from `rng` (g series first, then one path per day).
ReturnPanel generate_panel(const ScenarioConfig& cfg, Philox& rng);

/// Prices open * exp(R) with day labels "1".."N".
PricePanel prices_from_returns(const ReturnPanel& returns, double open = 100.0);

}  // namespace volcusum
