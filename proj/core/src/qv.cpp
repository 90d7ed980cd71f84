#include "volcusum/qv.hpp"

#include <cmath>
#include <string>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

void require_positive_total(const QVPanel& qv) {
  if (qv.intervals() == 0) throw Error(ErrorKind::Config, "empty quadratic variation panel");
  const Eigen::Index last = qv.values.cols() - 1;
  for (Eigen::Index i = 0; i < qv.values.rows(); ++i) {
    if (!(qv.values(i, last) > 0.0)) {
      Error err(ErrorKind::Degenerate,
                "day at row " + std::to_string(i) +
                    " has zero total quadratic variation (flat price path)");
      err.row = static_cast<std::size_t>(i);
      throw err;
    }
  }
}

}  // namespace

ReturnPanel cidr_curves(const PricePanel& prices) {
  const Matrix& p = prices.prices;
  ReturnPanel out{Matrix(p.rows(), p.cols())};
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index k = 0; k < p.cols(); ++k) {
      if (!(p(i, k) > 0.0)) {
        Error err(ErrorKind::Config, "nonpositive price at row " + std::to_string(i) +
                                         ", column " + std::to_string(k));
        err.row = static_cast<std::size_t>(i);
        err.column = static_cast<std::size_t>(k);
        throw err;
      }
    }
    // log of the ratio rather than a difference of logs: a common factor on
    // the whole day then cancels before the log and loses no precision.
    out.values(i, 0) = 0.0;
    for (Eigen::Index k = 1; k < p.cols(); ++k) out.values(i, k) = std::log(p(i, k) / p(i, 0));
  }
  return out;
}

QVPanel realized_qv(const ReturnPanel& returns) {
  const Matrix& r = returns.values;
  if (r.cols() < 3) {
    throw Error(ErrorKind::Config, "realized quadratic variation needs K >= 2 intervals");
  }
  const Eigen::Index K = r.cols() - 1;
  QVPanel out{Matrix(r.rows(), K)};
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index k = 1; k <= K; ++k) {
      const double d = r(i, k) - r(i, k - 1);
      acc += d * d;
      out.values(i, k - 1) = acc;
    }
  }
  return out;
}

StdQVPanel standardized_qv(const QVPanel& qv) {
  require_positive_total(qv);
  const Eigen::Index last = qv.values.cols() - 1;
  StdQVPanel out{Matrix(qv.values.rows(), qv.values.cols())};
  for (Eigen::Index i = 0; i < qv.values.rows(); ++i) {
    const double total = qv.values(i, last);
    for (Eigen::Index k = 0; k < last; ++k) out.values(i, k) = qv.values(i, k) / total;
    out.values(i, last) = 1.0;
  }
  return out;
}

LogTotalQV log_total_qv(const QVPanel& qv) {
  require_positive_total(qv);
  return LogTotalQV{qv.values.col(qv.values.cols() - 1).array().log().matrix()};
}

}  // namespace volcusum
