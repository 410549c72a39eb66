#include "infoflow/error.hpp"
#include "infoflow/kernels.hpp"

namespace infoflow::kernels::serial {

Vector row_means(const SeriesMatrix& rows) {
  const Eigen::Index p = rows.rows();
  const Eigen::Index n = rows.cols();
  Vector mean = Vector::Zero(p);
  for (Eigen::Index r = 0; r < p; ++r) {
    double sum = 0.0;
    for (Eigen::Index m = 0; m < n; ++m) sum += rows(r, m);
    mean[r] = sum / static_cast<double>(n);
  }
  return mean;
}

RowMoments row_moments(const SeriesMatrix& rows) {
  const Eigen::Index p = rows.rows();
  const Eigen::Index n = rows.cols();
  if (n < 2) throw Error(ErrorKind::insufficient_data, "covariance needs at least 2 samples");
  const Vector mean = row_means(rows);
  Matrix cov(p, p);
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index b = a; b < p; ++b) {
      double sum = 0.0;
      for (Eigen::Index m = 0; m < n; ++m) sum += (rows(a, m) - mean[a]) * (rows(b, m) - mean[b]);
      cov(a, b) = cov(b, a) = sum / static_cast<double>(n - 1);
    }
  }
  return {mean, std::move(cov)};
}

}  // namespace infoflow::kernels::serial
