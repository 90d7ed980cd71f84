#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "volcusum/panel.hpp"

namespace volcusum {

/// CUSUM statistic for a change in the volatility shape:
///   (1/N^2) sum_n sum_k (PS[n,k] - (n/N) PS[N,k])^2,
/// PS being row-wise partial sums of F. The integral over u is a Riemann sum
/// whose 1/K cancels the leading K of the continuous definition.
double shape_statistic(const StdQVPanel& f);

/// Same CUSUM on the scalar series log Q_i(1).
double total_statistic(const LogTotalQV& lq);

/// Squared CUSUM norm at every split point n = 1..N (index n-1 in the result).
/// The statistics above are the sum of these divided by N^2.
std::vector<double> cusum_objective(const Matrix& rows);
std::vector<double> cusum_objective(std::span<const double> series);

/// First-order difference estimate of the covariance operator of F:
///   sum_{n>=2} (F_n - F_{n-1})(F_n - F_{n-1})^T / (2(N-1)).
/// Differencing removes a single mean break, so the estimate stays valid under
/// the alternative. The matrix is the K-point discretisation of the operator
/// whose eigenvalues weight the Brownian bridges in the limit of
/// shape_statistic, so its matrix eigenvalues are used directly.
Matrix fde_covariance(const StdQVPanel& f);

/// Leading eigenvalues of a covariance estimate.
struct EigenSpectrum {
  std::vector<double> eigenvalues;  // decreasing, nonnegative
  double explained_fraction = 0.0;  // sum(eigenvalues) / trace
  double trace = 0.0;

  std::size_t components() const { return eigenvalues.size(); }
};

/// Keeps the smallest number B of eigenvalues whose share of the trace reaches
/// `threshold`. Throws Error(Config) on an asymmetric input and
/// Error(Degenerate) when the trace is zero.
EigenSpectrum eigen_spectrum(const Matrix& cov, double threshold = 0.95);

}  // namespace volcusum
