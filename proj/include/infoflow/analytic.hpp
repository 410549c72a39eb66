#pragma once

#include <cstddef>

#include "infoflow/panel.hpp"

namespace infoflow {

/// dX = (f + A X) dt + B dW with constant f, A, B.
struct LinearSDE {
  Vector f;
  Matrix A;
  /// d x m diffusion matrix.
  Matrix B;

  std::size_t dims() const noexcept { return static_cast<std::size_t>(A.rows()); }
  /// Noise covariance G = B B^T; g_ii are its diagonal entries.
  Matrix noise_covariance() const { return B * B.transpose(); }
  /// Throws ErrorKind::input on inconsistent shapes or non-finite entries.
  void validate() const;
};

/// Largest real part of the eigenvalues of A.
double spectral_abscissa(const Matrix& A);
/// max Re(lambda) < -kHurwitzMargin.
bool is_hurwitz(const Matrix& A);
inline constexpr double kHurwitzMargin = 1e-10;

struct StationaryCovariance {
  Matrix Sigma;
  /// max-norm of A Sigma + Sigma A^T + B B^T.
  double residual = 0.0;
  /// Reciprocal condition estimate of the vectorized operator.
  double rcond = 1.0;
  bool ill_conditioned = false;
};

/// Solves A Sigma + Sigma A^T + B B^T = 0 by Kronecker vectorization with one
/// step of iterative refinement. Throws no-stationary-distribution when A is
/// not Hurwitz.
StationaryCovariance stationary_covariance(const LinearSDE& sys);

/// a_ij sigma_ij / sigma_ii, the flow source j -> target i of the stationary system.
double analytic_flow(const LinearSDE& sys, const Matrix& Sigma, std::size_t source,
                     std::size_t target);

/// Full analytic flow matrix: entry (i, j) is the flow j -> i, diagonal zero.
Matrix analytic_flow_matrix(const LinearSDE& sys, const Matrix& Sigma);

/// System for Y = P X where P is the identity on components i and j and M on
/// the remaining components (in increasing index order).
LinearSDE transform_other_components(const LinearSDE& sys, std::size_t i, std::size_t j,
                                     const Matrix& M);

}  // namespace infoflow
