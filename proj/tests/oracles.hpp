#pragma once

// Independent reference computations for the tests. Everything here works on
// plain nested vectors with textbook loops and shares no code with the
// library paths it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double mean(const std::vector<double>& x, std::size_t n) {
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) s += x[m];
  return s / static_cast<double>(n);
}

/// Two-pass unbiased covariance over the first n samples.
inline double covariance(const std::vector<double>& x, const std::vector<double>& y, std::size_t n) {
  const double mx = mean(x, n);
  const double my = mean(y, n);
  double s = 0.0;
  for (std::size_t m = 0; m < n; ++m) s += (x[m] - mx) * (y[m] - my);
  return s / static_cast<double>(n - 1);
}

inline std::vector<double> forward_difference(const std::vector<double>& x, std::size_t k, double dt) {
  std::vector<double> out;
  for (std::size_t m = 0; m + k < x.size(); ++m) out.push_back((x[m + k] - x[m]) / (k * dt));
  return out;
}

/// Gaussian elimination with partial pivoting; solves M x = b.
inline std::vector<double> solve(Rows M, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
    if (M[piv][c] == 0.0) throw std::runtime_error("singular");
    std::swap(M[c], M[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = M[r][c] / M[c][c];
      for (std::size_t q = c; q < n; ++q) M[r][q] -= f * M[c][q];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t q = r + 1; q < n; ++q) s -= M[r][q] * x[q];
    x[r] = s / M[r][r];
  }
  return x;
}

/// Determinant by recursive Laplace expansion along the first row (small n).
inline double laplace_det(const Rows& M) {
  const std::size_t n = M.size();
  if (n == 0) return 1.0;
  if (n == 1) return M[0][0];
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Rows sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t q = 0; q < n; ++q)
        if (q != c) row.push_back(M[r][q]);
      sub.push_back(row);
    }
    det += ((c % 2 == 0) ? 1.0 : -1.0) * M[0][c] * laplace_det(sub);
  }
  return det;
}

/// Ordinary least squares of y on [1, regressors] through the normal
/// equations, solved by Gaussian elimination. Returns (intercept, slopes...).
inline std::vector<double> ols(const Rows& regressors, const std::vector<double>& y) {
  const std::size_t p = regressors.size() + 1;
  const std::size_t n = y.size();
  Rows XtX(p, std::vector<double>(p, 0.0));
  std::vector<double> Xty(p, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<double> row(p);
    row[0] = 1.0;
    for (std::size_t j = 1; j < p; ++j) row[j] = regressors[j - 1][m];
    for (std::size_t a = 0; a < p; ++a) {
      Xty[a] += row[a] * y[m];
      for (std::size_t b = 0; b < p; ++b) XtX[a][b] += row[a] * row[b];
    }
  }
  return solve(XtX, Xty);
}

inline Rows random_rows(std::size_t d, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Rows rows(d, std::vector<double>(n));
  for (auto& r : rows)
    for (auto& v : r) v = normal(gen);
  return rows;
}

}  // namespace oracle
