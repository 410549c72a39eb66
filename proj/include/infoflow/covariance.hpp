#pragma once

#include <cstddef>
#include <vector>

#include "infoflow/panel.hpp"

namespace infoflow {

struct Cofactors {
  /// Entry (i, j) is (-1)^(i+j) times the (i, j) minor.
  Matrix cofactors;
  double det = 0.0;
};

/// Sample statistics over the shared window of the first n - k samples.
struct CovarianceSet {
  Matrix C;
  double det_C = 0.0;
  Matrix cofactors;
  /// Window means of the series.
  Vector mean;
  /// Differenced targets, in the column order used below.
  std::vector<std::size_t> targets;
  /// Column t holds cov(X_j, dX_targets[t]) for every series j.
  Matrix deriv_cross;
  Vector deriv_mean;
  Vector deriv_var;
  std::size_t n_eff = 0;
  std::size_t k = 1;
  bool near_singular = false;

  std::size_t dims() const noexcept { return static_cast<std::size_t>(C.rows()); }
  /// Column of deriv_cross/deriv_mean/deriv_var for this target; throws if absent.
  Eigen::Index column_of(std::size_t target) const;
  Vector cross(std::size_t target) const { return deriv_cross.col(column_of(target)); }
};

/// |det C| below this multiple of prod(C_ii) counts as singular.
inline constexpr double kSingularRatio = 1e-12;

/// Covariance of the first n - k samples (k = 0 uses the full panel).
Matrix sample_covariance(const TimeSeriesPanel& panel, std::size_t k);

/// cov(X_j, dX_target) for every j over the shared window.
Vector derivative_cross_covariance(const TimeSeriesPanel& panel, std::size_t target,
                                   std::size_t k);

/// Cofactors and determinant; singular input is allowed.
Cofactors cofactor_matrix(const Matrix& C);

bool is_near_singular(const Matrix& C, double det);

/// Every statistic above from one stacked covariance pass, for all targets.
CovarianceSet covariance_set(const TimeSeriesPanel& panel, std::size_t k);
/// Same, differencing only the listed targets.
CovarianceSet covariance_set(const TimeSeriesPanel& panel, std::size_t k,
                             const std::vector<std::size_t>& targets);

/// Throws insufficient-data unless n - k >= d + 2.
void require_window(std::size_t n, std::size_t d, std::size_t k);

}  // namespace infoflow
