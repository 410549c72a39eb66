#pragma once

#include "infoflow/panel.hpp"

// Sample-covariance kernels over the rows of a component-major matrix.
//
// `serial` is the straightforward two-pass textbook loop and is kept as the
// reference the tests and the benchmark compare against. `parallel` splits
// the sample axis into fixed-size blocks, reduces each block under OpenMP
// and combines block partials in block order, so its result does not depend
// on the thread count or schedule.
namespace infoflow::kernels {

struct RowMoments {
  Vector mean;
  /// Unbiased (1/(n-1)) covariance of the rows.
  Matrix cov;
};

namespace serial {
Vector row_means(const SeriesMatrix& rows);
RowMoments row_moments(const SeriesMatrix& rows);
}  // namespace serial

namespace parallel {
inline constexpr Eigen::Index kBlock = 4096;
Vector row_means(const SeriesMatrix& rows);
RowMoments row_moments(const SeriesMatrix& rows);
}  // namespace parallel

/// Default dispatch used by the library.
inline RowMoments row_moments(const SeriesMatrix& rows) { return parallel::row_moments(rows); }
inline Matrix row_covariance(const SeriesMatrix& rows) { return parallel::row_moments(rows).cov; }

/// Threads used by parallel regions (0 leaves the runtime default).
void set_thread_count(int threads);
int thread_count();

}  // namespace infoflow::kernels
