#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "infoflow/error.hpp"
#include "infoflow/kernels.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/simulate.hpp"
#include "test_support.hpp"

using namespace infoflow;
using testing_support::mixed_rows;
using testing_support::panel_from_rows;
using testing_support::rel_diff;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an infoflow::Error");
  return ErrorKind::usage;
}

SignificanceReport asymptotic(const TimeSeriesPanel& p, std::size_t src, std::size_t tgt, std::size_t k = 1) {
  const auto cs = covariance_set(p, k);
  const auto fit = fit_from_moments(p, cs, tgt);
  return asymptotic_significance(fit, cs, estimate_flow(cs, src, tgt));
}

}  // namespace

TEST_CASE("normal tail") {
  CHECK(two_sided_p(0.0) == 1.0);
  CHECK(two_sided_p(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(two_sided_p(-1.959963984540054) == two_sided_p(1.959963984540054));
  double prev = 1.0;
  for (double z = 0.1; z < 12.0; z += 0.1) {
    const double p = two_sided_p(z);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("zero flow has zero z score") {
  const auto p = panel_from_rows({{1, -1, 1, -1, 1, -1, 1, -1, 3}, {1, 1, -1, -1, 1, 1, -1, -1, 0}});
  const auto cs = covariance_set(p, 1);
  REQUIRE(cs.C(0, 1) == 0.0);
  for (const auto& [s, t] : {std::pair<std::size_t, std::size_t>{1, 0}, {0, 1}}) {
    const auto fit = fit_from_moments(p, cs, t);
    const auto r = asymptotic_significance(fit, cs, estimate_flow(cs, s, t));
    CHECK(r.z_score == 0.0);
    CHECK(r.p_asymptotic == 1.0);
  }
}

TEST_CASE("standard error matches classical OLS") {
  const auto rows = mixed_rows(3, 4000, 17);
  const auto p = panel_from_rows(rows, 0.2);
  const auto cs = covariance_set(p, 1);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto fit = fit_from_moments(p, cs, i);
    // oracle: s^2 (X'X)^-1 with centered regressors and s^2 = SSR / N
    const auto dx = oracle::forward_difference(rows[i], 1, 0.2);
    const std::size_t N = dx.size();
    oracle::Rows X;
    for (const auto& r : rows) X.emplace_back(r.begin(), r.begin() + static_cast<long>(N));
    const auto beta = oracle::ols(X, dx);
    double ssr = 0.0;
    for (std::size_t m = 0; m < N; ++m) {
      double e = dx[m] - beta[0];
      for (std::size_t j = 0; j < 3; ++j) e -= beta[j + 1] * X[j][m];
      ssr += e * e;
    }
    std::vector<std::vector<double>> xtx(3, std::vector<double>(3, 0.0));
    std::vector<double> mu(3);
    for (std::size_t j = 0; j < 3; ++j) mu[j] = oracle::mean(X[j], N);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t m = 0; m < N; ++m) xtx[a][b] += (X[a][m] - mu[a]) * (X[b][m] - mu[b]);
    for (std::size_t j = 0; j < 3; ++j) {
      std::vector<double> unit(3, 0.0);
      unit[j] = 1.0;
      const double inv_jj = oracle::solve(xtx, unit)[j];
      const double classical = std::sqrt(ssr / static_cast<double>(N) * inv_jj);
      // differs only by the (N - 1) / N covariance normalization
      CHECK(rel_diff(coefficient_std_error(cs, fit, j), classical) < 1e-3);
    }
  }
}

TEST_CASE("standard error shrinks like 1/sqrt(n)") {
  const auto big = benchmark("one_way_2d", {}, 160000, 4);
  const auto small = big.panel.slice(0, 40000);
  const double ratio = asymptotic(small, 1, 0).std_error / asymptotic(big.panel, 1, 0).std_error;
  CHECK(ratio == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("exact fits are degenerate") {
  const double dt = 0.01;
  auto x2 = oracle::random_rows(1, 200, 8)[0];
  std::vector<double> x1(200, 0.5);
  for (std::size_t m = 0; m + 1 < 200; ++m) x1[m + 1] = x1[m] + dt * (x1[m] - x2[m]);
  const auto p = panel_from_rows({x1, x2}, dt);
  const auto cs = covariance_set(p, 1);
  auto fit = fit_from_moments(p, cs, 0);
  fit.residual_variance = 0.0;
  const auto r = asymptotic_significance(fit, cs, estimate_flow(cs, 1, 0));
  CHECK(r.degenerate);
  CHECK(r.std_error == 0.0);
  CHECK(r.p_asymptotic == 0.0);
}

TEST_CASE("serial correlation flag") {
  const auto run = benchmark("one_way_2d", {}, 50000, 6);
  CHECK_FALSE(asymptotic(run.panel, 1, 0, 1).serial_correlation);
  CHECK(asymptotic(run.panel, 1, 0, 5).serial_correlation);
}

TEST_CASE("surrogate argument checks") {
  const auto p = panel_from_rows(mixed_rows(2, 300, 3));
  SurrogateOptions o;
  o.n_surrogates = 18;
  CHECK(kind_of([&] { surrogate_significance(p, 1, 0, 1, o); }) == ErrorKind::resolution);
  o.n_surrogates = 19;
  CHECK(kind_of([&] { surrogate_significance(p, 0, 0, 1, o); }) == ErrorKind::invalid_pair);
  CHECK(surrogate_method_from_string("permutation") == SurrogateMethod::permutation);
  CHECK(surrogate_method_from_string("circular_shift") == SurrogateMethod::circular_shift);
  CHECK(to_string(SurrogateMethod::permutation) == "permutation");
  CHECK(kind_of([&] { surrogate_method_from_string("bogus"); }) == ErrorKind::usage);
}

TEST_CASE("surrogate p values live on the resolution grid") {
  const auto run = benchmark("one_way_2d", {}, 5000, 12);
  for (const auto method : {SurrogateMethod::circular_shift, SurrogateMethod::permutation}) {
    SurrogateOptions o{.n_surrogates = 99, .seed = 5, .method = method};
    for (const auto& [s, t] : {std::pair<std::size_t, std::size_t>{1, 0}, {0, 1}}) {
      const auto r = surrogate_significance(run.panel, s, t, 1, o);
      REQUIRE(r.p_surrogate.has_value());
      const double count = *r.p_surrogate * 100.0;
      CHECK(std::abs(count - std::round(count)) < 1e-9);
      CHECK(*r.p_surrogate >= 0.01);
      CHECK(*r.p_surrogate <= 1.0);
      CHECK(r.n_surrogates == 99);
      // recount from the surrogate sample
      const double observed = std::abs(estimate_flow(run.panel, s, t).value);
      const Vector flows = surrogate_flows(run.panel, s, t, 1, o);
      const auto hits = std::count_if(flows.begin(), flows.end(),
                                      [&](double v) { return std::abs(v) >= observed; });
      CHECK(*r.p_surrogate == doctest::Approx((1.0 + static_cast<double>(hits)) / 100.0));
    }
  }
}

TEST_CASE("strong coupling reaches the smallest p") {
  const auto run = benchmark("one_way_2d", {}, 20000, 2);
  const auto r = surrogate_significance(run.panel, 1, 0, 1, {.n_surrogates = 99, .seed = 1});
  CHECK(*r.p_surrogate == doctest::Approx(0.01));
}

TEST_CASE("surrogates are reproducible and order independent") {
  const auto run = benchmark("chain_3", {}, 3000, 8);
  const SurrogateOptions o{.n_surrogates = 60, .seed = 42};
  const Vector a = surrogate_flows(run.panel, 0, 1, 1, o);
  const Vector b = surrogate_flows(run.panel, 0, 1, 1, o);
  CHECK(a == b);
  // surrogate s depends only on (seed, s)
  const Vector prefix = surrogate_flows(run.panel, 0, 1, 1, {.n_surrogates = 25, .seed = 42});
  CHECK(prefix == a.head(25));
  const Vector other = surrogate_flows(run.panel, 0, 1, 1, {.n_surrogates = 60, .seed = 43});
  CHECK(other != a);

  const int saved = kernels::thread_count();
  kernels::set_thread_count(1);
  const Vector one = surrogate_flows(run.panel, 0, 1, 1, o);
  kernels::set_thread_count(4);
  const Vector four = surrogate_flows(run.panel, 0, 1, 1, o);
  kernels::set_thread_count(saved);
  CHECK(one == a);
  CHECK(four == a);
}

TEST_CASE("attach routes p values") {
  FlowEstimate f;
  SignificanceReport r;
  r.std_error = 0.1;
  r.p_asymptotic = 0.3;
  attach(f, r);
  CHECK(f.std_error == 0.1);
  CHECK(f.p_value() == 0.3);
  r.p_surrogate = 0.02;
  r.n_surrogates = 49;
  attach(f, r);
  CHECK(f.p_value_surrogate == 0.02);
  CHECK(f.p_value() == 0.02);
}
