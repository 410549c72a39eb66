#include <omp.h>

#include <algorithm>
#include <vector>

#include "infoflow/error.hpp"
#include "infoflow/kernels.hpp"

namespace infoflow::kernels {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int thread_count() { return omp_get_max_threads(); }

namespace parallel {
namespace {

Eigen::Index block_count(Eigen::Index n) { return (n + kBlock - 1) / kBlock; }

}  // namespace

Vector row_means(const SeriesMatrix& rows) {
  const Eigen::Index p = rows.rows();
  const Eigen::Index n = rows.cols();
  const Eigen::Index blocks = block_count(n);
  Matrix partial = Matrix::Zero(p, blocks);

#pragma omp parallel for schedule(static) if (blocks > 1)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index lo = b * kBlock;
    const Eigen::Index hi = std::min(n, lo + kBlock);
    for (Eigen::Index r = 0; r < p; ++r) {
      double sum = 0.0;
      for (Eigen::Index m = lo; m < hi; ++m) sum += rows(r, m);
      partial(r, b) = sum;
    }
  }

  Vector mean = Vector::Zero(p);
  for (Eigen::Index b = 0; b < blocks; ++b) mean += partial.col(b);
  return mean / static_cast<double>(n);
}

RowMoments row_moments(const SeriesMatrix& rows) {
  const Eigen::Index p = rows.rows();
  const Eigen::Index n = rows.cols();
  if (n < 2) throw Error(ErrorKind::insufficient_data, "covariance needs at least 2 samples");
  const Vector mean = row_means(rows);
  const Eigen::Index blocks = block_count(n);
  const Eigen::Index tri = p * (p + 1) / 2;
  std::vector<double> partial(static_cast<std::size_t>(blocks * tri), 0.0);

#pragma omp parallel for schedule(static) if (blocks > 1)
  for (Eigen::Index b = 0; b < blocks; ++b) {
    const Eigen::Index lo = b * kBlock;
    const Eigen::Index hi = std::min(n, lo + kBlock);
    const Eigen::Index len = hi - lo;
    // centered copy of the block, row-major, so the pair loops stream
    SeriesMatrix centered(p, len);
    for (Eigen::Index r = 0; r < p; ++r)
      centered.row(r) = rows.row(r).segment(lo, len).array() - mean[r];
    double* out = partial.data() + b * tri;
    Eigen::Index slot = 0;
    for (Eigen::Index a = 0; a < p; ++a) {
      const double* xa = centered.data() + a * len;
      for (Eigen::Index c = a; c < p; ++c) {
        const double* xc = centered.data() + c * len;
        double sum = 0.0;
        for (Eigen::Index m = 0; m < len; ++m) sum += xa[m] * xc[m];
        out[slot++] = sum;
      }
    }
  }

  Matrix cov(p, p);
  Eigen::Index slot = 0;
  for (Eigen::Index a = 0; a < p; ++a) {
    for (Eigen::Index c = a; c < p; ++c, ++slot) {
      double sum = 0.0;
      for (Eigen::Index b = 0; b < blocks; ++b) sum += partial[static_cast<std::size_t>(b * tri + slot)];
      cov(a, c) = cov(c, a) = sum / static_cast<double>(n - 1);
    }
  }
  return {mean, std::move(cov)};
}

}  // namespace parallel
}  // namespace infoflow::kernels
