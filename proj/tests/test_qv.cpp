#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "volcusum/dgp.hpp"
#include "volcusum/error.hpp"
#include "volcusum/qv.hpp"

using namespace volcusum;

namespace {

PricePanel panel_of(std::initializer_list<std::initializer_list<double>> rows) {
  PricePanel p;
  p.prices.resize(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index k = 0;
    for (double v : r) p.prices(i, k++) = v;
    p.days.push_back(std::to_string(i + 1));
    ++i;
  }
  return p;
}

PricePanel random_prices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> z(0.0, 0.01);
  PricePanel p;
  p.prices.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    double logp = std::log(50.0 + static_cast<double>(i));
    for (std::size_t j = 0; j <= k; ++j) {
      p.prices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::exp(logp);
      logp += z(gen);
    }
    p.days.push_back(std::to_string(i + 1));
  }
  return p;
}

}  // namespace

TEST_CASE("cidr_curves: log returns relative to the open") {
  const auto r1 = cidr_curves(panel_of({{5, 5, 5, 5}}));
  CHECK(r1.values.isZero(0.0));

  const double e = std::numbers::e;
  const auto r2 = cidr_curves(panel_of({{1, e, e * e}}));
  CHECK(r2.values(0, 0) == 0.0);
  CHECK(r2.values(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r2.values(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("cidr_curves: nonpositive price names row and column") {
  try {
    cidr_curves(panel_of({{1, 2, 3}, {1, 0, 3}}));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.row == std::optional<std::size_t>(1));
    CHECK(e.column == std::optional<std::size_t>(1));
  }
}

TEST_CASE("scale invariance of every derived panel") {
  PricePanel p = random_prices(20, 13, 11);
  PricePanel scaled = p;
  for (Eigen::Index i = 0; i < p.prices.rows(); ++i) {
    scaled.prices.row(i) *= 0.37 + 3.1 * static_cast<double>(i);
  }
  const auto r = cidr_curves(p);
  const auto rs = cidr_curves(scaled);
  const auto q = realized_qv(r);
  const auto qs = realized_qv(rs);
  const auto f = standardized_qv(q);
  const auto fs = standardized_qv(qs);
  for (Eigen::Index i = 0; i < r.values.rows(); ++i) {
    for (Eigen::Index k = 0; k < r.values.cols(); ++k) {
      CHECK(oracle::rel_err(r.values(i, k), rs.values(i, k)) <= 1e-12);
    }
    for (Eigen::Index k = 0; k < q.values.cols(); ++k) {
      CHECK(oracle::rel_err(q.values(i, k), qs.values(i, k)) <= 1e-12);
      CHECK(oracle::rel_err(f.values(i, k), fs.values(i, k)) <= 1e-12);
    }
  }
}

TEST_CASE("realized_qv: small examples and K >= 2") {
  ReturnPanel r{Matrix(1, 4)};
  r.values << 0, 1, 2, 3;
  const auto q = realized_qv(r);
  CHECK(q.values(0, 0) == 1.0);
  CHECK(q.values(0, 1) == 2.0);
  CHECK(q.values(0, 2) == 3.0);

  ReturnPanel flat{Matrix::Constant(2, 5, 0.3)};
  CHECK(realized_qv(flat).values.isZero(0.0));

  ReturnPanel k1{Matrix::Zero(3, 2)};
  CHECK_THROWS_AS(realized_qv(k1), Error);
}

TEST_CASE("realized_qv matches the naive double loop exactly") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = cidr_curves(random_prices(7, 78, seed));
    const auto q = realized_qv(r);
    CHECK(q.values == oracle::realized_qv(r.values));

    double total = 0.0;
    for (int k = 1; k <= 78; ++k) {
      const double d = r.values(3, k) - r.values(3, k - 1);
      total += d * d;
    }
    CHECK(q.values(3, 77) == total);
  }
}

TEST_CASE("standardized_qv: cdf rows") {
  QVPanel q{Matrix(1, 3)};
  q.values << 1, 2, 4;
  const auto f = standardized_qv(q);
  CHECK(f.values(0, 0) == 0.25);
  CHECK(f.values(0, 1) == 0.5);
  CHECK(f.values(0, 2) == 1.0);

  QVPanel qs{q.values * 7.5};
  CHECK((standardized_qv(qs).values - f.values).cwiseAbs().maxCoeff() <= 1e-15);

  const auto g = standardized_qv(realized_qv(cidr_curves(random_prices(30, 26, 5))));
  for (Eigen::Index i = 0; i < g.values.rows(); ++i) {
    CHECK(std::abs(g.values(i, 25) - 1.0) <= 1e-12);
    for (Eigen::Index k = 1; k < 26; ++k) CHECK(g.values(i, k) >= g.values(i, k - 1));
  }
}

TEST_CASE("zero total variation is a degenerate error naming the day") {
  QVPanel q{Matrix(3, 2)};
  q.values << 1, 2, 0, 0, 1, 1;
  for (int which = 0; which < 2; ++which) {
    try {
      if (which == 0) standardized_qv(q);
      else log_total_qv(q);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Degenerate);
      CHECK(e.row == std::optional<std::size_t>(1));
    }
  }
}

TEST_CASE("log_total_qv") {
  QVPanel q{Matrix(2, 2)};
  q.values << 0.5, 1.0, 1.0, std::exp(2.0);
  const auto lq = log_total_qv(q);
  CHECK(lq.values(0) == 0.0);
  CHECK(lq.values(1) == doctest::Approx(2.0).epsilon(1e-15));

  const auto qr = realized_qv(cidr_curves(random_prices(15, 10, 9)));
  const auto l = log_total_qv(qr);
  for (Eigen::Index i = 0; i < 15; ++i) CHECK(l.values(i) == std::log(qr.values(i, 9)));
}

TEST_CASE("exp(mean log total QV) recovers the integrated variance") {
  // Under H0 with flat sigma 0.2, mean_i log Q_i(1) estimates log 0.04 up to
  // the O(1/K) bias of log realized variance. The sampling error is driven by
  // the AR(1) factor 2 g_i whose long-run variance is 4 * 0.25 / 0.45^2, plus
  // roughly 2/K per day from the realized variance itself.
  ScenarioConfig cfg;
  cfg.shape = SigmaShape::flat();
  cfg.days = 2000;
  cfg.intervals = 78;
  cfg.seed = 2024;
  const auto lq = log_total_qv(realized_qv(generate_panel(cfg)));
  const double mean = lq.values.mean();
  const double se = std::sqrt((4.0 * 0.25 / (0.45 * 0.45) + 2.0 / 78.0) / 2000.0);
  CHECK(std::abs(mean - std::log(0.04)) <= 3.0 * se);
}
