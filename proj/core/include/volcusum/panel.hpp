#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace volcusum {

/// Row-major so that one trading day is one contiguous row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// N trading days of K+1 intraday prices P_i(t_0), ..., P_i(t_K).
///
/// Day identifiers are kept verbatim (ISO dates or integer labels) and must be
/// strictly increasing; see `day_less`.
struct PricePanel {
  std::vector<std::string> days;
  Matrix prices;

  std::size_t num_days() const { return static_cast<std::size_t>(prices.rows()); }
  /// Number of intraday intervals K (one less than the number of prices per day).
  std::size_t intervals() const {
    return prices.cols() > 0 ? static_cast<std::size_t>(prices.cols()) - 1 : 0;
  }

  /// Throws Error(Config) if the invariants (positive prices, K >= 1,
  /// one label per row, increasing labels) do not hold.
  void validate() const;

  /// Copy of days [first, first + count).
  PricePanel slice(std::size_t first, std::size_t count) const;
};

/// Cumulative intraday returns R_i(t_k) = log P_i(t_k) - log P_i(t_0);
/// N x (K+1), first column zero.
struct ReturnPanel {
  Matrix values;

  std::size_t num_days() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t intervals() const {
    return values.cols() > 0 ? static_cast<std::size_t>(values.cols()) - 1 : 0;
  }
};

/// Realized quadratic variation Q_i(k/K), k = 1..K; N x K, rows nondecreasing.
struct QVPanel {
  Matrix values;

  std::size_t num_days() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t intervals() const { return static_cast<std::size_t>(values.cols()); }
  QVPanel slice(std::size_t first, std::size_t count) const {
    return QVPanel{values.middleRows(static_cast<Eigen::Index>(first),
                                     static_cast<Eigen::Index>(count))};
  }
};

/// Standardized quadratic variation F_i(k/K) = Q_i(k/K) / Q_i(1); each row a
/// discrete cdf ending at exactly 1.
struct StdQVPanel {
  Matrix values;

  std::size_t num_days() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t intervals() const { return static_cast<std::size_t>(values.cols()); }
};

/// log Q_i(1), one entry per day.
struct LogTotalQV {
  Vector values;

  std::size_t num_days() const { return static_cast<std::size_t>(values.size()); }
};

/// Ordering used for day identifiers: numeric when both labels are plain
/// unsigned integers, lexicographic otherwise (which orders ISO dates).
bool day_less(const std::string& a, const std::string& b);

}  // namespace volcusum
