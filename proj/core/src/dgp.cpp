#include "volcusum/dgp.hpp"

#include <cmath>
#include <random>
#include <string>

#include "volcusum/error.hpp"

namespace volcusum {

ItoPath ito_path(const TimeChange& clock, std::size_t intervals, Philox& rng) {
  if (intervals < 2) throw Error(ErrorKind::Config, "an Ito path needs K >= 2 intervals");
  const std::vector<double> variances = clock.increments(intervals);
  std::normal_distribution<double> normal;
  ItoPath out;
  out.increments.resize(intervals);
  out.path.assign(intervals + 1, 0.0);
  for (std::size_t k = 0; k < intervals; ++k) {
    out.increments[k] = std::sqrt(variances[k]) * normal(rng);
    out.path[k + 1] = out.path[k] + out.increments[k];
  }
  return out;
}

GFactorSeries ar1_series(double phi, double sigma_eps2, std::size_t days, Philox& rng) {
  if (!(std::abs(phi) < 1.0)) throw Error(ErrorKind::Config, "AR coefficient must satisfy |phi| < 1");
  if (!(sigma_eps2 >= 0.0)) throw Error(ErrorKind::Config, "innovation variance must be nonnegative");
  std::normal_distribution<double> normal;
  GFactorSeries out{phi, sigma_eps2, std::vector<double>(days)};
  if (days == 0) return out;
  const double sd = std::sqrt(sigma_eps2);
  out.values[0] = std::sqrt(sigma_eps2 / (1.0 - phi * phi)) * normal(rng);
  for (std::size_t i = 1; i < days; ++i) {
    out.values[i] = phi * out.values[i - 1] + sd * normal(rng);
  }
  return out;
}

const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::H0: return "h0";
    case Hypothesis::HA1: return "ha1";
    case Hypothesis::HA2: return "ha2";
    case Hypothesis::HA3: return "ha3";
    case Hypothesis::GChange: return "gchange";
  }
  return "unknown";
}

Hypothesis hypothesis_from_string(const std::string& name) {
  if (name == "h0") return Hypothesis::H0;
  if (name == "ha1") return Hypothesis::HA1;
  if (name == "ha2") return Hypothesis::HA2;
  if (name == "ha3") return Hypothesis::HA3;
  if (name == "gchange") return Hypothesis::GChange;
  throw Error(ErrorKind::Config, "unknown hypothesis '" + name + "'");
}

SigmaShape ha1_after_shape() { return SigmaShape::sine(0.02, std::sqrt(199.0 / 5000.0)); }
SigmaShape ha2_after_shape() { return SigmaShape::flat(0.4); }
SigmaShape ha3_after_shape() { return SigmaShape::ushape(0.3); }
SigmaShape ha3_displayed_after_shape() {
  return SigmaShape::custom("ushape_0.4", [](double u) { return (u - 0.5) * (u - 0.5) + 0.4; });
}

void ScenarioConfig::validate() const {
  if (days < 2 || intervals < 2) throw Error(ErrorKind::Config, "scenario needs N >= 2 and K >= 2");
  if (!(theta > 0.0 && theta < 1.0)) throw Error(ErrorKind::Config, "theta must lie in (0, 1)");
  for (double p : {phi, phi_before, phi_after}) {
    if (!(std::abs(p) < 1.0)) throw Error(ErrorKind::Config, "AR coefficient must satisfy |phi| < 1");
  }
  if (!(sigma_eps2 >= 0.0)) throw Error(ErrorKind::Config, "innovation variance must be nonnegative");
}

SigmaShape ScenarioConfig::before() const {
  if (shape) return *shape;
  return hypothesis == Hypothesis::GChange ? SigmaShape::ushape() : SigmaShape::flat();
}

SigmaShape ScenarioConfig::after() const {
  if (after_shape) return *after_shape;
  switch (hypothesis) {
    case Hypothesis::HA1: return ha1_after_shape();
    case Hypothesis::HA2: return ha2_after_shape();
    case Hypothesis::HA3: return ha3_after_shape();
    case Hypothesis::H0:
    case Hypothesis::GChange: break;
  }
  return before();
}

std::size_t ScenarioConfig::break_day() const {
  switch (hypothesis) {
    case Hypothesis::H0: return days;
    case Hypothesis::GChange: return days / 2;
    default: return static_cast<std::size_t>(std::floor(static_cast<double>(days) * theta));
  }
}

ReturnPanel generate_panel(const ScenarioConfig& cfg) {
  Philox rng(cfg.seed, 0);
  return generate_panel(cfg, rng);
}

ReturnPanel generate_panel(const ScenarioConfig& cfg, Philox& rng) {
  cfg.validate();
  const std::size_t N = cfg.days;
  const std::size_t K = cfg.intervals;
  const std::size_t split = cfg.break_day();

  std::vector<double> g;
  if (cfg.hypothesis == Hypothesis::GChange) {
    std::normal_distribution<double> normal;
    const double sd = std::sqrt(cfg.sigma_eps2);
    g.resize(N);
    const double phi0 = cfg.phi_before;
    g[0] = std::sqrt(cfg.sigma_eps2 / (1.0 - phi0 * phi0)) * normal(rng);
    for (std::size_t i = 1; i < N; ++i) {
      const double phi = i < split ? cfg.phi_before : cfg.phi_after;
      g[i] = phi * g[i - 1] + sd * normal(rng);
    }
  } else {
    g = ar1_series(cfg.phi, cfg.sigma_eps2, N, rng).values;
  }

  const TimeChange clock_before(cfg.before());
  const TimeChange clock_after(cfg.after());
  const std::vector<double> sd_before = [&] {
    auto v = clock_before.increments(K);
    for (double& x : v) x = std::sqrt(x);
    return v;
  }();
  const std::vector<double> sd_after = [&] {
    auto v = clock_after.increments(K);
    for (double& x : v) x = std::sqrt(x);
    return v;
  }();

  std::normal_distribution<double> normal;
  ReturnPanel out{Matrix(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(K + 1))};
  for (std::size_t i = 0; i < N; ++i) {
    const auto& sd = i < split ? sd_before : sd_after;
    const double scale = std::exp(g[i]);
    const auto row = static_cast<Eigen::Index>(i);
    double x = 0.0;
    out.values(row, 0) = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      x += sd[k] * normal(rng);
      out.values(row, static_cast<Eigen::Index>(k + 1)) = scale * x;
    }
  }
  return out;
}

PricePanel prices_from_returns(const ReturnPanel& returns, double open) {
  PricePanel out;
  out.prices = (returns.values.array().exp() * open).matrix();
  out.days.reserve(returns.num_days());
  for (std::size_t i = 0; i < returns.num_days(); ++i) out.days.push_back(std::to_string(i + 1));
  return out;
}

}  // namespace volcusum
