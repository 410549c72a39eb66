// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "infoflow/analytic.hpp"
#include "infoflow/error.hpp"
#include "infoflow/graph.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/simulate.hpp"
#include "infoflow/window.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace infoflow;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = nd(gen);
  return m;
}

LinearSDE random_stable(Eigen::Index d, std::mt19937_64& gen) {
  LinearSDE s;
  s.f = Vector::Zero(d);
  s.B = random_matrix(d, d, gen, 1.0);
  do {
    s.A = random_matrix(d, d, gen, 1.0 / std::sqrt(static_cast<double>(d))) -
          1.2 * Matrix::Identity(d, d);
  } while (!is_hurwitz(s.A));
  return s;
}

LinearSDE make(const Matrix& A, const Matrix& B) {
  LinearSDE s;
  s.A = A;
  s.B = B;
  s.f = Vector::Zero(A.rows());
  return s;
}

// 1. cofactor evaluation against normal-equations regression
Outcome estimator_oracle() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t d = 2 + seed % 7;
    const auto rows = testing_support::mixed_rows(d, 1000, 9000 + seed);
    const auto panel = testing_support::panel_from_rows(rows, 0.1);
    const auto cs = covariance_set(panel, 1);
    for (std::size_t i = 0; i < d; ++i) {
      const auto dx = oracle::forward_difference(rows[i], 1, 0.1);
      oracle::Rows X;
      for (const auto& r : rows) X.emplace_back(r.begin(), r.begin() + static_cast<long>(dx.size()));
      const auto beta = oracle::ols(X, dx);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j);
        const double reference = beta[j + 1] * cs.C(I, J) / cs.C(I, I);
        worst = std::max(worst, testing_support::rel_diff(estimate_flow(cs, j, i).value, reference));
      }
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-9 && secs < 5.0, fmt("max rel diff %.2e, %.2f s", worst, secs)};
}

// 2. convergence to the analytic flow
Outcome convergence() {
  const auto t0 = Clock::now();
  std::vector<double> forward, backward;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto run = benchmark("one_way_2d", {}, 200000, seed);
    const auto cs = covariance_set(run.panel, 1);
    forward.push_back(estimate_flow(cs, 1, 0).value);
    backward.push_back(std::abs(estimate_flow(cs, 0, 1).value));
  }
  const auto sys = benchmark_system("one_way_2d");
  const double truth = analytic_flow(sys, stationary_covariance(sys).Sigma, 1, 0);
  const double m21 = median(forward), m12 = median(backward);
  const double secs = seconds_since(t0);
  const bool ok = std::abs(m21 - truth) <= 0.15 * truth && m12 < 0.01 && secs < 30.0;
  return {ok, fmt("median T2->1 %.4f (analytic %.4f), median |T1->2| %.4f, %.1f s", m21, truth, m12, secs)};
}

// 3. false positives when a_ij = 0
Outcome false_positives() {
  int asym_ind = 0, asym_one = 0, surr_ind = 0, surr_one = 0;
  constexpr int trials = 200;
  for (std::uint64_t t = 1; t <= trials; ++t) {
    {
      const auto run = benchmark("independent_d", {.d = 4}, 100000, 10000 + t);
      const auto cs = covariance_set(run.panel, 1);
      const auto fit = fit_from_moments(run.panel, cs, 0);
      asym_ind += asymptotic_significance(fit, cs, estimate_flow(cs, 1, 0)).p_asymptotic <= 0.05;
    }
    {
      const auto run = benchmark("one_way_2d", {}, 200000, 20000 + t);
      const auto cs = covariance_set(run.panel, 1);
      const auto fit = fit_from_moments(run.panel, cs, 1);
      asym_one += asymptotic_significance(fit, cs, estimate_flow(cs, 0, 1)).p_asymptotic <= 0.05;
    }
    const SurrogateOptions so{.n_surrogates = 199, .seed = 30000 + t};
    {
      const auto run = benchmark("independent_d", {.d = 4}, 10000, 40000 + t);
      surr_ind += *surrogate_significance(run.panel, 1, 0, 1, so).p_surrogate <= 0.05;
    }
    {
      const auto run = benchmark("one_way_2d", {}, 10000, 50000 + t);
      surr_one += *surrogate_significance(run.panel, 0, 1, 1, so).p_surrogate <= 0.05;
    }
  }
  auto rate = [&](int c) { return static_cast<double>(c) / trials; };
  const bool ok = rate(asym_ind) <= 0.08 && rate(asym_one) <= 0.08 && rate(surr_ind) <= 0.10 &&
                  rate(surr_one) <= 0.10;
  return {ok, fmt("asymptotic %.1f%% / %.1f%%, surrogate %.1f%% / %.1f%% (independent_d 2->1 / one_way_2d 1->2)",
                  100 * rate(asym_ind), 100 * rate(asym_one), 100 * rate(surr_ind), 100 * rate(surr_one))};
}

// 4. invariance under transformations of components 3-5
Outcome invariance() {
  std::mt19937_64 gen(4);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const auto sys = random_stable(5, gen);
    const Matrix M = random_matrix(3, 3, gen, 1.0);
    if (std::abs(M.determinant()) < 0.05) continue;
    const double before = analytic_flow(sys, stationary_covariance(sys).Sigma, 1, 0);
    const auto moved = transform_other_components(sys, 0, 1, M);
    const double after = analytic_flow(moved, stationary_covariance(moved).Sigma, 1, 0);
    worst = std::max(worst, std::abs(after - before) / std::abs(before));
    ++done;
  }
  return {worst < 1e-10, fmt("max rel diff %.2e over 100 systems", worst)};
}

// 5. common driver: correlated but causally unconnected
Outcome common_driver() {
  const auto sys = benchmark_system("confounder_3");
  const Matrix S = stationary_covariance(sys).Sigma;
  const double t12 = analytic_flow(sys, S, 0, 1), t21 = analytic_flow(sys, S, 1, 0);
  int quiet = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto run = benchmark("confounder_3", {}, 100000, 60000 + seed);
    const auto m = estimate_flow_matrix(run.panel);
    quiet += m.flow(0, 1).p_value() > 0.05 && m.flow(1, 0).p_value() > 0.05;
  }
  const bool ok = S(0, 1) != 0.0 && t12 == 0.0 && t21 == 0.0 && quiet >= 85;
  return {ok, fmt("sigma12 %.4f, T1->2 %g, T2->1 %g, both p > 0.05 in %d/100", S(0, 1), t12, t21, quiet)};
}

// 6. Lyapunov residual
Outcome lyapunov() {
  std::mt19937_64 gen(6);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index d = 1 + t % 20;
    const auto sys = random_stable(d, gen);
    const Matrix G = sys.noise_covariance();
    const Matrix S = stationary_covariance(sys).Sigma;
    const double r = (sys.A * S + S * sys.A.transpose() + G).cwiseAbs().maxCoeff();
    worst = std::max(worst, r / std::max(1.0, G.cwiseAbs().maxCoeff()));
  }
  return {worst < 1e-10, fmt("max scaled residual %.2e, d = 1..20", worst)};
}

// 7. self-influence of OU
Outcome self_influence() {
  std::vector<double> est;
  double worst_oracle = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SimulationSpec spec;
    spec.sys = make(Matrix::Constant(1, 1, -1.0), Matrix::Constant(1, 1, 1.0));
    spec.n = 200000;
    spec.dt = 0.01;
    spec.seed = 70000 + seed;
    const auto panel = euler_maruyama(spec);
    const double v = estimate_self_influence(panel, 0).value;
    std::vector<double> x(panel.values().data(), panel.values().data() + panel.samples());
    const auto dx = oracle::forward_difference(x, 1, 0.01);
    x.resize(dx.size());
    worst_oracle = std::max(worst_oracle, testing_support::rel_diff(v, oracle::ols({x}, dx)[1]));
    est.push_back(v);
  }
  const double m = median(est);
  return {std::abs(m + 1.0) <= 0.1 && worst_oracle < 1e-9,
          fmt("median %.4f, max rel diff to OLS slope %.2e", m, worst_oracle)};
}

// 8. exact graph recovery
Outcome graph_recovery() {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = true;
  for (const std::string name : {"chain_3", "confounder_3"}) {
    const auto planted = benchmark_edges(name);
    int exact = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto run = benchmark(name, {}, 100000, 80000 + seed);
      const auto g = reconstruct_graph(estimate_flow_matrix(run.panel), 0.05);
      std::vector<Edge> found;
      for (const auto& e : g.edges)
        found.push_back({run.panel.index_of(e.source), run.panel.index_of(e.target)});
      std::sort(found.begin(), found.end());
      exact += found == planted;
    }
    ok = ok && exact >= 80;
    detail += fmt("%s %d/100, ", name.c_str(), exact);
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 120.0, detail + fmt("%.1f s", secs)};
}

// 9. regime-switch onset in running windows
Outcome regime_switch() {
  constexpr std::size_t n = 10000, switch_at = 5000, W = 2000, S = 1000;
  // first window containing post-switch samples
  const std::size_t onset = (switch_at - W) / S + 1;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SimulationSpec spec;
    spec.sys = make(-Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    spec.n = n;
    spec.dt = 0.1;
    spec.burn_in = 1000;
    spec.seed = 90000 + seed;
    LinearSDE after = spec.sys;
    after.A(0, 1) = 1.0;
    const auto panel = euler_maruyama_switching(spec, after, switch_at);
    const auto w = sliding_window_flows(panel, {.window = W, .step = S, .pairs = {{1, 0}}});
    std::optional<std::size_t> first;
    for (std::size_t r = 0; r < w.rows.size() && !first; ++r)
      if (w.rows[r].flows[0] && w.rows[r].flows[0]->p_value() <= 0.05) first = r;
    hits += first && (*first + 2 >= onset) && (*first <= onset + 2);
  }
  return {hits >= 40, fmt("onset window %zu found within +-2 in %d/50", onset, hits)};
}

// 10. seeded CLI pipelines are byte identical
Outcome reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("infoflow_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto pipeline = [&](const std::string& tag) {
    const std::string cli = INFOFLOW_CLI;
    const auto csv = (dir / (tag + ".csv")).string();
    const std::vector<std::string> cmds{
        cli + " simulate --benchmark chain_3 --n 20000 --seed 11 --out " + csv,
        cli + " --surrogates 99 --seed 3 --normalize estimate " + csv + " --source x1 --target x2 --json",
        cli + " --json --normalize matrix " + csv,
        cli + " graph " + csv,
        cli + " --surrogates 49 --seed 3 --correction bonferroni graph " + csv + " --format json",
        cli + " --surrogates 19 --seed 5 --normalize window " + csv + " --window 5000 --step 2500",
    };
    std::string all;
    for (std::size_t c = 0; c < cmds.size(); ++c) {
      const auto out = dir / (tag + std::to_string(c) + ".out");
      if (std::system((cmds[c] + " >" + out.string()).c_str()) != 0) return std::string("failed: ") + cmds[c];
      all += slurp(out);
    }
    return all + slurp(csv) + slurp(csv + ".meta.json");
  };
  const std::string a = pipeline("a"), b = pipeline("b");
  fs::remove_all(dir);
  return {a == b && a.rfind("failed", 0) != 0, fmt("%zu bytes compared", a.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"estimator-oracle equivalence", estimator_oracle},
      {"convergence to analytic flow", convergence},
      {"false-positive control", false_positives},
      {"invariance under other-component transforms", invariance},
      {"common driver", common_driver},
      {"Lyapunov solver residual", lyapunov},
      {"OU self-influence", self_influence},
      {"graph recovery", graph_recovery},
      {"windowed regime detection", regime_switch},
      {"pipeline reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    Outcome o;
    try {
      o = criteria[c].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", c + 1, criteria[c].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
