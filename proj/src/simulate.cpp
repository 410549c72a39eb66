#include "infoflow/simulate.hpp"

#include <cmath>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {
namespace {

void validate_spec(const SimulationSpec& spec) {
  spec.sys.validate();
  if (spec.n < 2) throw Error(ErrorKind::usage, "simulation needs n >= 2 steps");
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt))
    throw Error(ErrorKind::usage, "simulation step dt must be positive");
  if (spec.x0.size() != 0 && static_cast<std::size_t>(spec.x0.size()) != spec.sys.dims())
    throw Error(ErrorKind::input, "initial state must have length d");
  if (!spec.labels.empty() && spec.labels.size() != spec.sys.dims())
    throw Error(ErrorKind::input, "label count must equal d");
}

std::vector<std::string> default_labels(std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("x" + std::to_string(i + 1));
  return labels;
}

TimeSeriesPanel integrate(const SimulationSpec& spec, const LinearSDE* after,
                          std::size_t switch_at) {
  validate_spec(spec);
  const auto d = static_cast<Eigen::Index>(spec.sys.dims());
  const Eigen::Index noise_dims = spec.sys.B.cols();
  if (after) {
    after->validate();
    if (after->A.rows() != d || after->B.cols() != noise_dims)
      throw Error(ErrorKind::input, "switched system must have the same shape");
  }
  Rng rng(spec.seed);
  Vector x = spec.x0.size() ? spec.x0 : Vector::Zero(d);
  Vector xi(noise_dims);
  const double sqrt_dt = std::sqrt(spec.dt);
  SeriesMatrix out(d, static_cast<Eigen::Index>(spec.n));
  const std::size_t total = spec.burn_in + spec.n;
  for (std::size_t step = 0; step < total; ++step) {
    if (step >= spec.burn_in) {
      out.col(static_cast<Eigen::Index>(step - spec.burn_in)) = x;
    }
    if (step + 1 == total) break;
    const bool switched = after && step >= spec.burn_in + switch_at;
    const LinearSDE& sys = switched ? *after : spec.sys;
    for (Eigen::Index c = 0; c < noise_dims; ++c) xi[c] = rng.normal();
    x += (sys.f + sys.A * x) * spec.dt + sys.B * xi * sqrt_dt;
    if (!(x.cwiseAbs().maxCoeff() <= kExplosionBound))
      throw Error(ErrorKind::instability, "trajectory exploded at step " + std::to_string(step + 1) +
                                              "; try a smaller dt");
  }
  return TimeSeriesPanel(spec.labels.empty() ? default_labels(spec.sys.dims()) : spec.labels,
                         std::move(out), spec.dt);
}

LinearSDE make_system(Matrix A) {
  LinearSDE sys;
  const Eigen::Index d = A.rows();
  sys.f = Vector::Zero(d);
  sys.B = Matrix::Identity(d, d);
  sys.A = std::move(A);
  return sys;
}

}  // namespace

TimeSeriesPanel euler_maruyama(const SimulationSpec& spec) { return integrate(spec, nullptr, 0); }

TimeSeriesPanel euler_maruyama_switching(const SimulationSpec& spec, const LinearSDE& after,
                                         std::size_t switch_at) {
  return integrate(spec, &after, switch_at);
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names{"one_way_2d", "chain_3", "confounder_3",
                                              "independent_d", "henon"};
  return names;
}

LinearSDE benchmark_system(const std::string& name, const BenchmarkParams& params) {
  if (name == "one_way_2d") {
    Matrix A(2, 2);
    A << -1.0, 0.5, 0.0, -1.0;
    return make_system(A);
  }
  if (name == "chain_3") {
    Matrix A(3, 3);
    A << -1.0, 0.0, 0.0, 0.5, -1.0, 0.0, 0.0, 0.5, -1.0;
    return make_system(A);
  }
  if (name == "confounder_3") {
    Matrix A(3, 3);
    A << -1.0, 0.0, 1.0, 0.0, -1.0, 1.0, 0.0, 0.0, -1.0;
    return make_system(A);
  }
  if (name == "independent_d") {
    if (params.d < 1) throw Error(ErrorKind::usage, "independent_d needs d >= 1");
    const auto d = static_cast<Eigen::Index>(params.d);
    Matrix A = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) A(i, i) = -(1.0 + 0.25 * static_cast<double>(i));
    return make_system(A);
  }
  if (name == "henon") throw Error(ErrorKind::usage, "henon is a map, not a linear SDE");
  throw Error(ErrorKind::usage, "unknown benchmark '" + name + "'");
}

std::vector<Edge> benchmark_edges(const std::string& name, const BenchmarkParams& params) {
  if (name == "one_way_2d") return {{1, 0}};
  if (name == "chain_3") return {{0, 1}, {1, 2}};
  if (name == "confounder_3") return {{2, 0}, {2, 1}};
  if (name == "independent_d") {
    if (params.d < 1) throw Error(ErrorKind::usage, "independent_d needs d >= 1");
    return {};
  }
  if (name == "henon") return {{0, 1}, {1, 0}};
  throw Error(ErrorKind::usage, "unknown benchmark '" + name + "'");
}

BenchmarkRun benchmark(const std::string& name, const BenchmarkParams& params, std::size_t n,
                       std::uint64_t seed) {
  if (name == "henon") {
    if (n < 2) throw Error(ErrorKind::usage, "simulation needs n >= 2 steps");
    constexpr double a = 1.4;
    constexpr double b = 0.3;
    SeriesMatrix out(2, static_cast<Eigen::Index>(n));
    double x = 0.0;
    double y = 0.0;
    for (std::size_t step = 0; step < params.burn_in + n; ++step) {
      if (step >= params.burn_in) {
        out(0, static_cast<Eigen::Index>(step - params.burn_in)) = x;
        out(1, static_cast<Eigen::Index>(step - params.burn_in)) = y;
      }
      const double next_x = 1.0 - a * x * x + y;
      y = b * x;
      x = next_x;
    }
    return BenchmarkRun{name, TimeSeriesPanel({"x", "y"}, std::move(out), 1.0),
                        benchmark_edges(name, params), std::nullopt, 1.0, params.burn_in, seed};
  }

  SimulationSpec spec;
  spec.sys = benchmark_system(name, params);
  spec.n = n;
  spec.dt = params.dt;
  spec.burn_in = params.burn_in;
  spec.seed = seed;
  if (name == "one_way_2d") spec.labels = {"x", "y"};
  return BenchmarkRun{name, euler_maruyama(spec), benchmark_edges(name, params), spec.sys,
                      params.dt, params.burn_in, seed};
}

std::string edge_label(const Edge& e) {
  return std::to_string(e.source + 1) + "->" + std::to_string(e.target + 1);
}

}  // namespace infoflow
