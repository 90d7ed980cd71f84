#include "volcusum/cusum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "volcusum/error.hpp"

namespace volcusum {

namespace {

void require_two_days(std::size_t n, const char* what) {
  if (n < 2) {
    throw Error(ErrorKind::Config,
                std::string(what) + " needs at least 2 days, got " + std::to_string(n));
  }
}

}  // namespace

std::vector<double> cusum_objective(const Matrix& rows) {
  const Eigen::Index N = rows.rows();
  const Eigen::Index K = rows.cols();
  Eigen::RowVectorXd total = Eigen::RowVectorXd::Zero(K);
  for (Eigen::Index n = 0; n < N; ++n) total += rows.row(n);

  std::vector<double> objective(static_cast<std::size_t>(N));
  Eigen::RowVectorXd partial = Eigen::RowVectorXd::Zero(K);
  for (Eigen::Index n = 0; n < N; ++n) {
    partial += rows.row(n);
    const double frac = static_cast<double>(n + 1) / static_cast<double>(N);
    objective[static_cast<std::size_t>(n)] = (partial - frac * total).squaredNorm();
  }
  return objective;
}

std::vector<double> cusum_objective(std::span<const double> series) {
  const std::size_t N = series.size();
  const double total = std::accumulate(series.begin(), series.end(), 0.0);
  std::vector<double> objective(N);
  double partial = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    partial += series[n];
    const double dev =
        partial - static_cast<double>(n + 1) / static_cast<double>(N) * total;
    objective[n] = dev * dev;
  }
  return objective;
}

double shape_statistic(const StdQVPanel& f) {
  require_two_days(f.num_days(), "shape statistic");
  const auto objective = cusum_objective(f.values);
  const double n = static_cast<double>(f.num_days());
  return std::accumulate(objective.begin(), objective.end(), 0.0) / (n * n);
}

double total_statistic(const LogTotalQV& lq) {
  require_two_days(lq.num_days(), "total volatility statistic");
  const auto objective =
      cusum_objective(std::span<const double>(lq.values.data(), lq.num_days()));
  const double n = static_cast<double>(lq.num_days());
  return std::accumulate(objective.begin(), objective.end(), 0.0) / (n * n);
}

Matrix fde_covariance(const StdQVPanel& f) {
  require_two_days(f.num_days(), "difference covariance");
  const Eigen::Index N = f.values.rows();
  const Matrix diffs = f.values.bottomRows(N - 1) - f.values.topRows(N - 1);
  Matrix cov = diffs.transpose() * diffs;
  cov /= 2.0 * static_cast<double>(N - 1);
  // The product is symmetric up to rounding; make it exactly so.
  Matrix sym = 0.5 * (cov + cov.transpose());
  return sym;
}

EigenSpectrum eigen_spectrum(const Matrix& cov, double threshold) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw Error(ErrorKind::Config, "covariance must be a nonempty square matrix");
  }
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::Config, "eigen threshold must lie in (0, 1]");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorKind::Config, "covariance matrix is not symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::Degenerate, "eigen decomposition failed");
  }
  std::vector<double> values(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + solver.eigenvalues().size());
  std::reverse(values.begin(), values.end());
  for (double& v : values) v = std::max(v, 0.0);

  const double trace = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(trace > 0.0)) {
    throw Error(ErrorKind::Degenerate, "degenerate covariance (all curves identical)");
  }

  EigenSpectrum out;
  out.trace = trace;
  double cumulative = 0.0;
  for (double v : values) {
    out.eigenvalues.push_back(v);
    cumulative += v;
    if (cumulative / trace >= threshold - 1e-12) break;
  }
  out.explained_fraction = cumulative / trace;
  return out;
}

}  // namespace volcusum
