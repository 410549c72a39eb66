#include "infoflow/covariance.hpp"

#include <cmath>

#include "infoflow/error.hpp"
#include "infoflow/kernels.hpp"

namespace infoflow {
namespace {

/// Rows 0..d-1: series over the window; then one forward-differenced row per target.
SeriesMatrix stack_window(const TimeSeriesPanel& panel, std::size_t k,
                          const std::vector<std::size_t>& targets) {
  const auto d = static_cast<Eigen::Index>(panel.dims());
  const auto n_eff = static_cast<Eigen::Index>(panel.samples() - k);
  const auto lag = static_cast<Eigen::Index>(k);
  const double span = static_cast<double>(k) * panel.dt();
  const SeriesMatrix& x = panel.values();
  SeriesMatrix z(d + static_cast<Eigen::Index>(targets.size()), n_eff);
  z.topRows(d) = x.leftCols(n_eff);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto row = static_cast<Eigen::Index>(targets[t]);
    z.row(d + static_cast<Eigen::Index>(t)) =
        (x.row(row).segment(lag, n_eff) - x.row(row).head(n_eff)) / span;
  }
  return z;
}

double minor_det(const Matrix& C, Eigen::Index row, Eigen::Index col) {
  const Eigen::Index d = C.rows();
  Matrix sub(d - 1, d - 1);
  for (Eigen::Index r = 0, rr = 0; r < d; ++r) {
    if (r == row) continue;
    for (Eigen::Index c = 0, cc = 0; c < d; ++c) {
      if (c == col) continue;
      sub(rr, cc++) = C(r, c);
    }
    ++rr;
  }
  return sub.fullPivLu().determinant();
}

}  // namespace

void require_window(std::size_t n, std::size_t d, std::size_t k) {
  if (k >= n)
    throw Error(ErrorKind::invalid_stride,
                "stride k=" + std::to_string(k) + " must be below the sample count " + std::to_string(n));
  if (n - k < d + 2)
    throw Error(ErrorKind::insufficient_data,
                "need n - k >= d + 2 samples (n=" + std::to_string(n) + ", k=" +
                    std::to_string(k) + ", d=" + std::to_string(d) + ")");
}

Matrix sample_covariance(const TimeSeriesPanel& panel, std::size_t k) {
  require_window(panel.samples(), panel.dims(), k);
  const auto n_eff = static_cast<Eigen::Index>(panel.samples() - k);
  return kernels::row_covariance(panel.values().leftCols(n_eff));
}

Vector derivative_cross_covariance(const TimeSeriesPanel& panel, std::size_t target,
                                   std::size_t k) {
  if (k < 1) throw Error(ErrorKind::invalid_stride, "stride k must be at least 1");
  require_window(panel.samples(), panel.dims(), k);
  if (target >= panel.dims()) throw Error(ErrorKind::usage, "target index out of range");
  const auto d = static_cast<Eigen::Index>(panel.dims());
  const auto n_eff = static_cast<Eigen::Index>(panel.samples() - k);
  const DifferencedSeries diff = forward_difference(panel, target, k);
  SeriesMatrix z(d + 1, n_eff);
  z.topRows(d) = panel.values().leftCols(n_eff);
  z.row(d) = diff.values.transpose();
  const Matrix cov = kernels::row_covariance(z);
  return cov.col(d).head(d);
}

Cofactors cofactor_matrix(const Matrix& C) {
  const Eigen::Index d = C.rows();
  Cofactors out;
  out.cofactors.resize(d, d);
  switch (d) {
    case 0:
      out.det = 1.0;
      break;
    case 1:
      out.cofactors(0, 0) = 1.0;
      out.det = C(0, 0);
      break;
    case 2:
      out.cofactors << C(1, 1), -C(1, 0), -C(0, 1), C(0, 0);
      out.det = C(0, 0) * C(1, 1) - C(0, 1) * C(1, 0);
      break;
    case 3: {
      auto m = [&](int r0, int r1, int c0, int c1) {
        return C(r0, c0) * C(r1, c1) - C(r0, c1) * C(r1, c0);
      };
      out.cofactors(0, 0) = m(1, 2, 1, 2);
      out.cofactors(0, 1) = -m(1, 2, 0, 2);
      out.cofactors(0, 2) = m(1, 2, 0, 1);
      out.cofactors(1, 0) = -m(0, 2, 1, 2);
      out.cofactors(1, 1) = m(0, 2, 0, 2);
      out.cofactors(1, 2) = -m(0, 2, 0, 1);
      out.cofactors(2, 0) = m(0, 1, 1, 2);
      out.cofactors(2, 1) = -m(0, 1, 0, 2);
      out.cofactors(2, 2) = m(0, 1, 0, 1);
      out.det = C(0, 0) * out.cofactors(0, 0) + C(0, 1) * out.cofactors(0, 1) +
                C(0, 2) * out.cofactors(0, 2);
      break;
    }
    default:
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
          const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
          out.cofactors(i, j) = sign * minor_det(C, i, j);
        }
      }
      out.det = C.fullPivLu().determinant();
      break;
  }
  return out;
}

bool is_near_singular(const Matrix& C, double det) {
  double scale = 1.0;
  for (Eigen::Index i = 0; i < C.rows(); ++i) scale *= C(i, i);
  if (!(scale > 0.0)) return true;
  return !(std::abs(det) >= kSingularRatio * scale);
}

Eigen::Index CovarianceSet::column_of(std::size_t target) const {
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t] == target) return static_cast<Eigen::Index>(t);
  }
  throw Error(ErrorKind::usage, "target " + std::to_string(target) +
                                    " was not differenced in this covariance set");
}

CovarianceSet covariance_set(const TimeSeriesPanel& panel, std::size_t k) {
  std::vector<std::size_t> all(panel.dims());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return covariance_set(panel, k, all);
}

CovarianceSet covariance_set(const TimeSeriesPanel& panel, std::size_t k,
                             const std::vector<std::size_t>& targets) {
  if (k < 1) throw Error(ErrorKind::invalid_stride, "stride k must be at least 1");
  require_window(panel.samples(), panel.dims(), k);
  for (const auto t : targets) {
    if (t >= panel.dims()) throw Error(ErrorKind::usage, "target index out of range");
  }
  const auto d = static_cast<Eigen::Index>(panel.dims());
  const auto nt = static_cast<Eigen::Index>(targets.size());
  const kernels::RowMoments moments = kernels::row_moments(stack_window(panel, k, targets));
  CovarianceSet out;
  out.C = moments.cov.topLeftCorner(d, d);
  out.mean = moments.mean.head(d);
  out.targets = targets;
  out.deriv_cross = moments.cov.topRightCorner(d, nt);
  out.deriv_mean = moments.mean.tail(nt);
  out.deriv_var = moments.cov.bottomRightCorner(nt, nt).diagonal();
  Cofactors cf = cofactor_matrix(out.C);
  out.cofactors = std::move(cf.cofactors);
  out.det_C = cf.det;
  out.n_eff = panel.samples() - k;
  out.k = k;
  out.near_singular = is_near_singular(out.C, out.det_C);
  return out;
}

}  // namespace infoflow
