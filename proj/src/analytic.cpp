#include "infoflow/analytic.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "infoflow/error.hpp"

namespace infoflow {
namespace {

constexpr double kRcondWarning = 1e-12;

Matrix lyapunov_residual(const Matrix& A, const Matrix& S, const Matrix& G) {
  return A * S + S * A.transpose() + G;
}

Vector vec(const Matrix& M) { return Eigen::Map<const Vector>(M.data(), M.size()); }

Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

}  // namespace

void LinearSDE::validate() const {
  const Eigen::Index d = A.rows();
  if (d < 1 || A.cols() != d) throw Error(ErrorKind::input, "drift matrix A must be square");
  if (f.size() != d) throw Error(ErrorKind::input, "drift vector f must have length d");
  if (B.rows() != d || B.cols() < 1)
    throw Error(ErrorKind::input, "diffusion matrix B must have d rows");
  if (!A.allFinite() || !B.allFinite() || !f.allFinite())
    throw Error(ErrorKind::input, "system coefficients must be finite");
}

double spectral_abscissa(const Matrix& A) {
  const Eigen::EigenSolver<Matrix> es(A, false);
  return es.eigenvalues().real().maxCoeff();
}

bool is_hurwitz(const Matrix& A) { return spectral_abscissa(A) < -kHurwitzMargin; }

StationaryCovariance stationary_covariance(const LinearSDE& sys) {
  sys.validate();
  const double abscissa = spectral_abscissa(sys.A);
  if (!(abscissa < -kHurwitzMargin))
    throw Error(ErrorKind::no_stationary_distribution,
                "drift matrix is not Hurwitz (max Re(eig) = " + std::to_string(abscissa) +
                    "); no stationary distribution");
  const Eigen::Index d = sys.A.rows();
  const Matrix G = sys.noise_covariance();
  const Matrix I = Matrix::Identity(d, d);

  // vec(A S + S A^T) = (I (x) A + A (x) I) vec(S), column-major vec
  Matrix K = Matrix::Zero(d * d, d * d);
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = 0; q < d; ++q) {
      K.block(p * d, q * d, d, d) += I(p, q) * sys.A;
      K.block(p * d, q * d, d, d) += sys.A(p, q) * I;
    }
  }
  const Eigen::PartialPivLU<Matrix> lu(K);
  Matrix S = unvec(lu.solve(-vec(G)), d);
  S = (0.5 * (S + S.transpose())).eval();
  const Matrix r = lyapunov_residual(sys.A, S, G);
  S -= unvec(lu.solve(vec(r)), d);
  S = (0.5 * (S + S.transpose())).eval();

  StationaryCovariance out;
  out.Sigma = S;
  out.residual = lyapunov_residual(sys.A, S, G).cwiseAbs().maxCoeff();
  out.rcond = lu.rcond();
  out.ill_conditioned = out.rcond < kRcondWarning;
  return out;
}

double analytic_flow(const LinearSDE& sys, const Matrix& Sigma, std::size_t source,
                     std::size_t target) {
  const auto d = static_cast<std::size_t>(sys.A.rows());
  if (source >= d || target >= d) throw Error(ErrorKind::usage, "component index out of range");
  if (source == target) throw Error(ErrorKind::invalid_pair, "source equals target");
  const auto i = static_cast<Eigen::Index>(target);
  const auto j = static_cast<Eigen::Index>(source);
  if (!(Sigma(i, i) > 0.0))
    throw Error(ErrorKind::degenerate_component,
                "component " + std::to_string(target + 1) + " has zero stationary variance");
  return sys.A(i, j) * Sigma(i, j) / Sigma(i, i);
}

Matrix analytic_flow_matrix(const LinearSDE& sys, const Matrix& Sigma) {
  const Eigen::Index d = sys.A.rows();
  Matrix T = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (i != j)
        T(i, j) = analytic_flow(sys, Sigma, static_cast<std::size_t>(j), static_cast<std::size_t>(i));
    }
  }
  return T;
}

LinearSDE transform_other_components(const LinearSDE& sys, std::size_t i, std::size_t j,
                                     const Matrix& M) {
  sys.validate();
  const auto d = static_cast<std::size_t>(sys.A.rows());
  if (d < 3) throw Error(ErrorKind::invalid_transform, "transforming other components needs d >= 3");
  if (i >= d || j >= d || i == j)
    throw Error(ErrorKind::invalid_transform, "components i and j must be distinct and in range");
  const auto rest = static_cast<Eigen::Index>(d - 2);
  if (M.rows() != rest || M.cols() != rest)
    throw Error(ErrorKind::invalid_transform, "transform must be (d-2) x (d-2)");
  const Eigen::FullPivLU<Matrix> lu(M);
  if (!lu.isInvertible()) throw Error(ErrorKind::invalid_transform, "transform is singular");

  std::vector<Eigen::Index> others;
  for (std::size_t c = 0; c < d; ++c) {
    if (c != i && c != j) others.push_back(static_cast<Eigen::Index>(c));
  }
  const Matrix M_inv = lu.inverse();
  const auto n = static_cast<Eigen::Index>(d);
  Matrix P = Matrix::Identity(n, n);
  Matrix P_inv = Matrix::Identity(n, n);
  for (Eigen::Index r = 0; r < rest; ++r) {
    for (Eigen::Index c = 0; c < rest; ++c) {
      P(others[r], others[c]) = M(r, c);
      P_inv(others[r], others[c]) = M_inv(r, c);
    }
  }
  LinearSDE out;
  out.A = P * sys.A * P_inv;
  out.B = P * sys.B;
  out.f = P * sys.f;
  return out;
}

}  // namespace infoflow
