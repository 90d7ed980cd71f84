#include "volcusum/limit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

std::vector<double> series_weights(std::size_t terms) {
  std::vector<double> w(terms);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (std::size_t j = 1; j <= terms; ++j) {
    const double jj = static_cast<double>(j);
    w[j - 1] = 1.0 / (jj * jj * pi2);
  }
  return w;
}

double series_draw(const std::vector<double>& weights, Philox& rng,
                   std::normal_distribution<double>& normal) {
  double acc = 0.0;
  for (double w : weights) {
    const double z = normal(rng);
    acc += w * z * z;
  }
  return acc;
}

void sort_decreasing(std::vector<double>& v) {
  std::stable_sort(v.begin(), v.end(), std::greater<>());
}

void require_positive(std::size_t value, const char* what) {
  if (value == 0) throw Error(ErrorKind::Config, std::string(what) + " must be at least 1");
}

}  // namespace

double bb_l2_draw(std::size_t terms, Philox& rng) {
  require_positive(terms, "series truncation J");
  std::normal_distribution<double> normal;
  return series_draw(series_weights(terms), rng, normal);
}

LimitSample simulate_shape_limit(const EigenSpectrum& spectrum, std::size_t draws,
                                 std::size_t terms, Philox& rng) {
  require_positive(draws, "draw count r");
  require_positive(terms, "series truncation J");
  const auto weights = series_weights(terms);
  std::normal_distribution<double> normal;
  LimitSample out;
  out.series_terms = terms;
  out.values.resize(draws);
  for (double& v : out.values) {
    double acc = 0.0;
    for (double lambda : spectrum.eigenvalues) acc += lambda * series_draw(weights, rng, normal);
    v = acc;
  }
  sort_decreasing(out.values);
  return out;
}

double empirical_pvalue(double stat, const LimitSample& sample) {
  if (sample.values.empty()) throw Error(ErrorKind::Config, "empty limit sample");
  // Sorted decreasing: the exceedances form a prefix.
  const auto end = std::partition_point(sample.values.begin(), sample.values.end(),
                                        [stat](double v) { return v >= stat; });
  const auto exceed = static_cast<double>(end - sample.values.begin());
  return (1.0 + exceed) / (static_cast<double>(sample.values.size()) + 1.0);
}

double pvalue_total(double stat, double lrv, const LimitSample& bridge) {
  if (bridge.values.empty()) throw Error(ErrorKind::Config, "empty limit sample");
  if (lrv < 0.0) throw Error(ErrorKind::Config, "long-run variance must be nonnegative");
  const double r = static_cast<double>(bridge.values.size());
  if (lrv == 0.0) return stat > 0.0 ? 1.0 / (r + 1.0) : 1.0;
  LimitSample scaled = bridge;
  for (double& v : scaled.values) v *= lrv;
  return empirical_pvalue(stat, scaled);
}

double pvalue_total(double stat, double lrv, std::size_t draws, std::size_t terms,
                    Philox& rng) {
  require_positive(draws, "draw count r");
  require_positive(terms, "series truncation J");
  if (lrv < 0.0) throw Error(ErrorKind::Config, "long-run variance must be nonnegative");
  if (lrv == 0.0) return stat > 0.0 ? 1.0 / (static_cast<double>(draws) + 1.0) : 1.0;
  FreshLimitSampler sampler(rng, draws, terms);
  return pvalue_total(stat, lrv, sampler.bridge_limit());
}

const char* to_string(TestKind kind) {
  switch (kind) {
    case TestKind::Shape: return "shape";
    case TestKind::Total: return "total";
    case TestKind::Global: return "global";
  }
  return "unknown";
}

TestReport fisher_combine(double p_shape, double p_total) {
  const auto valid = [](double p) { return p > 0.0 && p <= 1.0; };
  if (!valid(p_shape) || !valid(p_total)) {
    throw std::invalid_argument("fisher_combine: p-values must lie in (0, 1]");
  }
  TestReport report;
  report.method = TestKind::Global;
  report.statistic = -2.0 * (std::log(p_shape) + std::log(p_total));
  const double half = 0.5 * report.statistic;
  report.p_value = std::min(1.0, std::exp(-half) * (1.0 + half));
  report.nuisance = std::pair<double, double>{p_shape, p_total};
  return report;
}

FreshLimitSampler::FreshLimitSampler(Philox rng, std::size_t draws, std::size_t terms)
    : rng_(rng), draws_(draws), terms_(terms) {
  require_positive(draws, "draw count r");
  require_positive(terms, "series truncation J");
}

LimitSample FreshLimitSampler::shape_limit(const EigenSpectrum& spectrum) {
  return simulate_shape_limit(spectrum, draws_, terms_, rng_);
}

LimitSample FreshLimitSampler::bridge_limit() {
  const auto weights = series_weights(terms_);
  std::normal_distribution<double> normal;
  LimitSample out;
  out.series_terms = terms_;
  out.values.resize(draws_);
  for (double& v : out.values) v = series_draw(weights, rng_, normal);
  sort_decreasing(out.values);
  return out;
}

LimitTable::LimitTable(std::uint64_t seed, std::size_t draws, std::size_t terms)
    : seed_(seed), draws_(draws), terms_(terms) {
  require_positive(draws, "draw count r");
  require_positive(terms, "series truncation J");
}

const std::vector<double>& LimitTable::column(std::size_t index) {
  std::lock_guard lock(mutex_);
  if (columns_.size() <= index) columns_.resize(index + 1);
  if (!columns_[index]) {
    Philox rng(seed_, streams::limit_table(0, index));
    const auto weights = series_weights(terms_);
    std::normal_distribution<double> normal;
    auto col = std::make_unique<std::vector<double>>(draws_);
    for (double& v : *col) v = series_draw(weights, rng, normal);
    columns_[index] = std::move(col);
  }
  return *columns_[index];
}

LimitSample LimitTable::shape_limit(const EigenSpectrum& spectrum) {
  LimitSample out;
  out.series_terms = terms_;
  out.values.assign(draws_, 0.0);
  for (std::size_t l = 0; l < spectrum.eigenvalues.size(); ++l) {
    const auto& col = column(l + 1);
    const double lambda = spectrum.eigenvalues[l];
    for (std::size_t i = 0; i < draws_; ++i) out.values[i] += lambda * col[i];
  }
  sort_decreasing(out.values);
  return out;
}

LimitSample LimitTable::bridge_limit() {
  LimitSample out;
  out.series_terms = terms_;
  out.values = column(0);
  sort_decreasing(out.values);
  return out;
}

}  // namespace volcusum
