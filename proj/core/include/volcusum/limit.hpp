#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <variant>
#include <vector>

#include "volcusum/cusum.hpp"
#include "volcusum/rng.hpp"

namespace volcusum {

inline constexpr std::size_t kDefaultDraws = 5000;
inline constexpr std::size_t kDefaultSeriesTerms = 500;

/// One draw of int_0^1 B(u)^2 du for a standard Brownian bridge, via the
/// Karhunen-Loeve series sum_{j<=J} Z_j^2 / (j^2 pi^2).
double bb_l2_draw(std::size_t terms, Philox& rng);

/// Draws from a limiting null distribution, sorted in decreasing order.
struct LimitSample {
  std::vector<double> values;
  std::size_t series_terms = 0;

  std::size_t size() const { return values.size(); }
};

/// `draws` independent copies of sum_l lambda_l * int B_l^2, sorted decreasing.
LimitSample simulate_shape_limit(const EigenSpectrum& spectrum, std::size_t draws,
                                 std::size_t terms, Philox& rng);

/// Add-one exceedance estimate (1 + #{draws >= stat}) / (r + 1). Always in
/// (0, 1] and nonincreasing in `stat`.
double empirical_pvalue(double stat, const LimitSample& sample);

/// p-value of the total-volatility statistic against lrv * int B^2.
/// With lrv = 0 the limit is a point mass at zero: p = 1 for stat = 0 and
/// 1 / (r + 1) otherwise.
double pvalue_total(double stat, double lrv, std::size_t draws, std::size_t terms,
                    Philox& rng);

/// As pvalue_total, against an existing sample of unscaled int B^2 draws.
double pvalue_total(double stat, double lrv, const LimitSample& bridge);

enum class TestKind { Shape, Total, Global };

const char* to_string(TestKind kind);

struct TestReport {
  TestKind method = TestKind::Shape;
  double statistic = 0.0;
  double p_value = 1.0;
  /// Shape: the retained spectrum. Total: the long-run variance.
  /// Global: the component p-values (shape, total).
  std::variant<EigenSpectrum, double, std::pair<double, double>> nuisance;

  bool rejects(double alpha) const { return p_value <= alpha; }
};

/// Fisher's combination -2 (log p1 + log p2) with its chi-square(4) tail
/// probability exp(-S/2) (1 + S/2). Throws std::invalid_argument unless both
/// p-values are in (0, 1].
TestReport fisher_combine(double p_shape, double p_total);

/// Source of limiting-distribution samples for the two component tests.
class LimitSampler {
 public:
  virtual ~LimitSampler() = default;
  virtual LimitSample shape_limit(const EigenSpectrum& spectrum) = 0;
  /// Draws of int B^2 (unscaled); the caller multiplies by the long-run variance.
  virtual LimitSample bridge_limit() = 0;
};

/// Fresh, independent draws from one generator on every call.
class FreshLimitSampler final : public LimitSampler {
 public:
  FreshLimitSampler(Philox rng, std::size_t draws = kDefaultDraws,
                    std::size_t terms = kDefaultSeriesTerms);

  LimitSample shape_limit(const EigenSpectrum& spectrum) override;
  LimitSample bridge_limit() override;

 private:
  Philox rng_;
  std::size_t draws_;
  std::size_t terms_;
};

/// A fixed table of int B^2 draws, `draws` rows by as many columns as the
/// largest spectrum seen so far, shared by many replications of an
/// experiment. Row i of the shape limit is sum_l lambda_l * table(i, l); the
/// total-test limit uses a separate column. Columns are generated lazily, each
/// from its own stream, so contents do not depend on call order. Thread-safe.
class LimitTable {
 public:
  LimitTable(std::uint64_t seed, std::size_t draws = kDefaultDraws,
             std::size_t terms = kDefaultSeriesTerms);

  std::size_t draws() const { return draws_; }
  std::size_t series_terms() const { return terms_; }

  LimitSample shape_limit(const EigenSpectrum& spectrum);
  LimitSample bridge_limit();

 private:
  const std::vector<double>& column(std::size_t index);

  std::uint64_t seed_;
  std::size_t draws_;
  std::size_t terms_;
  std::mutex mutex_;
  std::vector<std::unique_ptr<std::vector<double>>> columns_;  // index 0: total test
};

class TableLimitSampler final : public LimitSampler {
 public:
  explicit TableLimitSampler(std::shared_ptr<LimitTable> table)
      : table_(std::move(table)) {}

  LimitSample shape_limit(const EigenSpectrum& spectrum) override {
    return table_->shape_limit(spectrum);
  }
  LimitSample bridge_limit() override { return table_->bridge_limit(); }

 private:
  std::shared_ptr<LimitTable> table_;
};

}  // namespace volcusum
