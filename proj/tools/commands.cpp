#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoflow/analytic.hpp"
#include "infoflow/csv.hpp"
#include "infoflow/error.hpp"
#include "infoflow/estimator.hpp"
#include "infoflow/graph.hpp"
#include "infoflow/kernels.hpp"
#include "infoflow/rng.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/simulate.hpp"
#include "infoflow/window.hpp"

namespace infoflow::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::size_t k = 1;
  std::optional<double> dt;
  bool json = false;
  std::optional<std::uint64_t> seed;
  int jobs = 0;
  double alpha = 0.05;
  std::string correction = "none";
  std::size_t surrogates = 0;
  std::string method = "circular_shift";
  bool normalize = false;
  bool per_step = false;
  bool strict_repro = false;
  char delimiter = ',';
  bool no_header = false;
  std::optional<std::string> time_column;
};

struct PairArgs {
  std::string source;
  std::string target;
};

std::string number(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.10g", v);
  return buffer;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

TimeSeriesPanel load_panel(const std::string& path, const GlobalOptions& g) {
  CsvOptions options;
  options.delimiter = g.delimiter;
  options.has_header = !g.no_header;
  options.time_column = g.time_column;
  options.detect_time_column = !g.time_column.has_value();
  options.dt_override = g.dt;
  return ingest_csv(path, options);
}

/// Label first, then a 1-based index.
std::size_t resolve_series(const TimeSeriesPanel& panel, const std::string& name) {
  for (std::size_t i = 0; i < panel.dims(); ++i) {
    if (panel.labels()[i] == name) return i;
  }
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), index);
  if (ec == std::errc() && ptr == name.data() + name.size() && index >= 1 && index <= panel.dims())
    return index - 1;
  throw Error(ErrorKind::usage, "no series named '" + name + "'");
}

/// Seed for randomized work: explicit, or generated and reported.
std::uint64_t resolve_seed(const GlobalOptions& g, std::ostream& err) {
  if (g.seed) return *g.seed;
  if (g.strict_repro) throw Error(ErrorKind::usage, "--strict-repro requires an explicit --seed");
  std::random_device device;
  const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "seed: " << seed << "\n";
  return seed;
}

double unit_scale(const GlobalOptions& g, const TimeSeriesPanel& panel) {
  return g.per_step ? panel.dt() : 1.0;
}

const char* unit_name(const GlobalOptions& g) { return g.per_step ? "nats/step" : "nats/time"; }

void scale_flow(FlowEstimate& f, double scale) {
  f.value *= scale;
  if (f.std_error) *f.std_error *= scale;
}

json flow_json(const FlowEstimate& f, const std::vector<std::string>& labels) {
  return {{"source", labels[f.source]},
          {"target", labels[f.target]},
          {"flow", f.value},
          {"std_error", optional_number(f.std_error)},
          {"p_asymptotic", optional_number(f.p_value_asymptotic)},
          {"p_surrogate", optional_number(f.p_value_surrogate)},
          {"normalized", optional_number(f.normalized)}};
}

SurrogateOptions surrogate_options(const GlobalOptions& g, std::uint64_t seed) {
  SurrogateOptions so;
  so.n_surrogates = g.surrogates;
  so.seed = seed;
  so.method = surrogate_method_from_string(g.method);
  return so;
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const GlobalOptions& g, const std::string& path, const PairArgs& pair,
                 std::ostream& out, std::ostream& err) {
  if (pair.source == pair.target)
    throw Error(ErrorKind::invalid_pair, "source equals target; use `matrix` for self-influence");
  const TimeSeriesPanel panel = load_panel(path, g);
  const std::size_t source = resolve_series(panel, pair.source);
  const std::size_t target = resolve_series(panel, pair.target);
  if (source == target) throw Error(ErrorKind::invalid_pair, "source equals target");

  const CovarianceSet cov = covariance_set(panel, g.k, {target});
  FlowEstimate flow = estimate_flow(cov, source, target);
  const LinearModelFit fit = fit_from_moments(panel, cov, target);
  const SignificanceReport asym = asymptotic_significance(fit, cov, flow);
  attach(flow, asym);
  std::optional<std::uint64_t> seed;
  if (g.surrogates > 0) {
    seed = resolve_seed(g, err);
    attach(flow, surrogate_significance(panel, source, target, g.k, surrogate_options(g, *seed)));
  }
  if (g.normalize) flow.normalized = normalize_flow(flow, estimate_self_influence(cov, target), fit);
  scale_flow(flow, unit_scale(g, panel));

  std::vector<std::string> warnings;
  if (asym.degenerate) warnings.emplace_back("zero residual variance: exact fit, inference degenerate");
  if (asym.serial_correlation)
    warnings.emplace_back("lag-1 residual autocorrelation " + number(fit.residual_lag1) +
                          " exceeds 0.2; asymptotic p value may be optimistic");

  if (g.json) {
    json doc = flow_json(flow, panel.labels());
    doc["schema"] = "infoflow-estimate/1";
    doc["units"] = unit_name(g);
    doc["k"] = flow.k;
    doc["n_eff"] = flow.n_eff;
    doc["dt"] = panel.dt();
    doc["n_surrogates"] = g.surrogates;
    doc["surrogate_method"] = g.surrogates > 0 ? json(g.method) : json(nullptr);
    doc["seed"] = seed ? json(*seed) : json(nullptr);
    doc["warnings"] = warnings;
    out << doc.dump(2) << "\n";
  } else {
    const auto& labels = panel.labels();
    out << "flow " << labels[source] << " -> " << labels[target] << ": " << number(flow.value)
        << " " << unit_name(g) << "\n";
    out << "std_error: " << number(*flow.std_error) << "\n";
    out << "p_asymptotic: " << number(*flow.p_value_asymptotic) << "\n";
    if (flow.p_value_surrogate)
      out << "p_surrogate: " << number(*flow.p_value_surrogate) << " (" << g.surrogates << " "
          << g.method << " surrogates, seed " << *seed << ")\n";
    if (flow.normalized) out << "normalized: " << number(*flow.normalized) << "\n";
    out << "k: " << flow.k << "  n_eff: " << flow.n_eff << "  dt: " << number(panel.dt()) << "\n";
    for (const auto& w : warnings) err << "warning: " << w << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- matrix/graph

FlowMatrix build_matrix(const GlobalOptions& g, const TimeSeriesPanel& panel, std::ostream& err,
                        std::optional<std::uint64_t>& seed) {
  FlowMatrixOptions options;
  options.k = g.k;
  options.normalize = g.normalize;
  FlowMatrix matrix = estimate_flow_matrix(panel, options);
  if (g.surrogates > 0) {
    seed = resolve_seed(g, err);
    std::uint64_t pair = 0;
    for (auto& f : matrix.flows()) {
      SurrogateOptions so = surrogate_options(g, substream_seed(*seed, pair++));
      attach(f, surrogate_significance(panel, f.source, f.target, g.k, so));
    }
  }
  return matrix;
}

int cmd_matrix(const GlobalOptions& g, const std::string& path, std::ostream& out,
               std::ostream& err) {
  const TimeSeriesPanel panel = load_panel(path, g);
  std::optional<std::uint64_t> seed;
  const FlowMatrix matrix = build_matrix(g, panel, err, seed);
  const double scale = unit_scale(g, panel);
  const auto& labels = panel.labels();

  if (g.json) {
    json flows = json::array();
    for (FlowEstimate f : matrix.flows()) {
      scale_flow(f, scale);
      flows.push_back(flow_json(f, labels));
    }
    json self = json::array();
    for (const auto& s : matrix.self_influence()) {
      self.push_back({{"node", labels[s.target]},
                      {"value", s.value * scale},
                      {"std_error", s.std_error ? json(*s.std_error * scale) : json(nullptr)},
                      {"p", optional_number(s.p_value)}});
    }
    json doc = {{"schema", "infoflow-matrix/1"},
                {"labels", labels},
                {"units", unit_name(g)},
                {"flows", flows},
                {"self_influence", self},
                {"meta",
                 {{"k", matrix.k()},
                  {"dt", panel.dt()},
                  {"n_eff", matrix.n_eff()},
                  {"n_surrogates", g.surrogates},
                  {"seed", seed ? json(*seed) : json(nullptr)}}}};
    out << doc.dump(2) << "\n";
    return 0;
  }

  // targets as rows, sources as columns, self influence last
  const auto cell_text = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return std::string(buffer);
  };
  std::size_t width = 16;
  for (const auto& l : labels) width = std::max(width, l.size() + 2);
  out << std::left << std::setw(static_cast<int>(width)) << "target\\source";
  for (const auto& l : labels) out << std::setw(static_cast<int>(width)) << l;
  out << "self\n";
  for (std::size_t i = 0; i < matrix.dims(); ++i) {
    out << std::setw(static_cast<int>(width)) << labels[i];
    for (std::size_t j = 0; j < matrix.dims(); ++j) {
      const std::string cell = i == j ? "-" : cell_text(matrix.flow(j, i).value * scale);
      out << std::setw(static_cast<int>(width)) << cell;
    }
    out << cell_text(matrix.self_influence()[i].value * scale) << "\n";
  }
  out << "\np values (" << (g.surrogates > 0 ? "surrogate" : "asymptotic") << ")\n";
  for (std::size_t i = 0; i < matrix.dims(); ++i) {
    out << std::setw(static_cast<int>(width)) << labels[i];
    for (std::size_t j = 0; j < matrix.dims(); ++j) {
      const std::string cell = i == j ? "-" : cell_text(*matrix.flow(j, i).p_value());
      out << std::setw(static_cast<int>(width)) << cell;
    }
    out << cell_text(matrix.self_influence()[i].p_value.value_or(1.0)) << "\n";
  }
  out << std::right << "units: " << unit_name(g) << "  k: " << matrix.k()
      << "  n_eff: " << matrix.n_eff() << "\n";
  return 0;
}

int cmd_graph(const GlobalOptions& g, const std::string& path, const std::string& format,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  const GraphFormat fmt = graph_format_from_string(format);
  const TimeSeriesPanel panel = load_panel(path, g);
  std::optional<std::uint64_t> seed;
  const FlowMatrix matrix = build_matrix(g, panel, err, seed);
  const CausalGraph graph = reconstruct_graph(matrix, g.alpha, correction_from_string(g.correction));
  const std::string text = export_graph(graph, fmt);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::io, "cannot write '" + out_path + "'");
    file << text;
  }
  return 0;
}

// ------------------------------------------------------------------ window

int cmd_window(const GlobalOptions& g, const std::string& path, const PairArgs& pair,
               std::size_t window, std::size_t step, std::ostream& out, std::ostream& err) {
  const TimeSeriesPanel panel = load_panel(path, g);
  WindowOptions options;
  options.window = window;
  options.step = step == 0 ? window : step;
  options.k = g.k;
  options.normalize = g.normalize;
  if (!pair.source.empty() || !pair.target.empty()) {
    if (pair.source.empty() || pair.target.empty())
      throw Error(ErrorKind::usage, "--source and --target go together");
    const std::size_t source = resolve_series(panel, pair.source);
    const std::size_t target = resolve_series(panel, pair.target);
    if (source == target) throw Error(ErrorKind::invalid_pair, "source equals target");
    options.pairs.emplace_back(source, target);
  }
  std::optional<std::uint64_t> seed;
  if (g.surrogates > 0) {
    seed = resolve_seed(g, err);
    options.n_surrogates = g.surrogates;
    options.seed = *seed;
    options.method = surrogate_method_from_string(g.method);
  }
  const WindowedFlowSeries series = sliding_window_flows(panel, options);
  const double scale = unit_scale(g, panel);
  const auto& labels = panel.labels();
  const auto pair_name = [&](std::size_t p) {
    return labels[series.pairs[p].first] + "->" + labels[series.pairs[p].second];
  };

  if (g.json) {
    json rows = json::array();
    for (const auto& row : series.rows) {
      json flows = json::array();
      for (const auto& f : row.flows) {
        if (!f) {
          flows.push_back(nullptr);
          continue;
        }
        FlowEstimate scaled = *f;
        scale_flow(scaled, scale);
        flows.push_back(flow_json(scaled, labels));
      }
      rows.push_back({{"start", row.start}, {"center", row.center}, {"flows", flows}});
    }
    json pairs = json::array();
    for (std::size_t p = 0; p < series.pairs.size(); ++p) pairs.push_back(pair_name(p));
    json doc = {{"schema", "infoflow-window/1"},
                {"window", series.window_length},
                {"step", series.step},
                {"units", unit_name(g)},
                {"pairs", pairs},
                {"rows", rows},
                {"meta",
                 {{"k", g.k},
                  {"dt", panel.dt()},
                  {"n_surrogates", g.surrogates},
                  {"seed", seed ? json(*seed) : json(nullptr)}}}};
    out << doc.dump(2) << "\n";
    return 0;
  }

  out << "start,center";
  for (std::size_t p = 0; p < series.pairs.size(); ++p) {
    out << "," << pair_name(p) << ",p:" << pair_name(p);
    if (g.normalize) out << ",normalized:" << pair_name(p);
  }
  out << "\n";
  char buffer[64];
  const auto emit = [&](double v) {
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    out << buffer;
  };
  for (const auto& row : series.rows) {
    out << row.start << ",";
    emit(row.center);
    for (const auto& f : row.flows) {
      out << ",";
      if (f) emit(f->value * scale);
      out << ",";
      if (f) emit(*f->p_value());
      if (g.normalize) {
        out << ",";
        if (f && f->normalized) emit(*f->normalized);
      }
    }
    out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

Matrix matrix_from_json(const json& rows, const char* name) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorKind::format, std::string(name) + " must be a non-empty array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.front().size());
  Matrix M(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
      throw Error(ErrorKind::format, std::string(name) + " rows must have equal length");
    for (Eigen::Index j = 0; j < c; ++j) M(i, j) = row[static_cast<std::size_t>(j)].get<double>();
  }
  return M;
}

json matrix_to_json(const Matrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

struct SystemFile {
  LinearSDE sys;
  Vector x0;
  std::vector<std::string> labels;
};

SystemFile read_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
  try {
    const json doc = json::parse(in);
    SystemFile out;
    out.sys.A = matrix_from_json(doc.at("A"), "A");
    out.sys.B = matrix_from_json(doc.at("B"), "B");
    const auto d = out.sys.A.rows();
    out.sys.f = Vector::Zero(d);
    if (doc.contains("f")) {
      const auto f = doc.at("f").get<std::vector<double>>();
      out.sys.f = Eigen::Map<const Vector>(f.data(), static_cast<Eigen::Index>(f.size()));
    }
    if (doc.contains("x0")) {
      const auto x0 = doc.at("x0").get<std::vector<double>>();
      out.x0 = Eigen::Map<const Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
    }
    if (doc.contains("labels")) out.labels = doc.at("labels").get<std::vector<std::string>>();
    out.sys.validate();
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, std::string("malformed system JSON: ") + e.what());
  }
}

struct SimulateArgs {
  std::string benchmark;
  std::string system;
  std::size_t n = 10000;
  std::size_t burn_in = 10000;
  std::size_t d = 4;
  std::string out;
  std::string meta;
};

int cmd_simulate(const GlobalOptions& g, const SimulateArgs& a, std::ostream& out,
                 std::ostream& err) {
  if (a.benchmark.empty() == a.system.empty())
    throw Error(ErrorKind::usage, "give exactly one of --benchmark or --system");
  if (!a.benchmark.empty()) {
    const auto& names = benchmark_names();
    if (std::find(names.begin(), names.end(), a.benchmark) == names.end())
      throw Error(ErrorKind::usage, "unknown benchmark '" + a.benchmark + "'");
  }
  const std::uint64_t seed = resolve_seed(g, err);

  std::optional<TimeSeriesPanel> panel;
  std::optional<LinearSDE> sys;
  std::vector<Edge> edges;
  double dt = g.dt.value_or(0.01);
  json source;
  if (!a.benchmark.empty()) {
    BenchmarkParams params;
    params.d = a.d;
    params.dt = dt;
    params.burn_in = a.burn_in;
    BenchmarkRun run = benchmark(a.benchmark, params, a.n, seed);
    dt = run.dt;
    sys = run.sys;
    edges = run.true_edges;
    panel.emplace(std::move(run.panel));
    source = {{"benchmark", a.benchmark}};
    if (a.benchmark == "independent_d") source["d"] = a.d;
  } else {
    SystemFile file = read_system(a.system);
    // refuses systems without a stationary distribution
    (void)stationary_covariance(file.sys);
    SimulationSpec spec;
    spec.sys = file.sys;
    spec.n = a.n;
    spec.dt = dt;
    spec.burn_in = a.burn_in;
    spec.seed = seed;
    spec.x0 = file.x0;
    spec.labels = file.labels;
    panel.emplace(euler_maruyama(spec));
    sys = file.sys;
    const auto d = static_cast<Eigen::Index>(file.sys.dims());
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        if (i != j && file.sys.A(i, j) != 0.0)
          edges.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i)});
      }
    }
    std::sort(edges.begin(), edges.end());
    source = {{"system", a.system}};
  }

  json true_edges = json::array();
  for (const auto& e : edges) true_edges.push_back(edge_label(e));
  json meta = {{"schema", "infoflow-simulation/1"},
               {"source", source},
               {"labels", panel->labels()},
               {"n", a.n},
               {"dt", dt},
               {"burn_in", a.burn_in},
               {"seed", seed},
               {"rng", Rng::kAlgorithm},
               {"scheme", sys ? "euler-maruyama" : "henon-map"},
               {"true_edges", true_edges}};
  if (sys) {
    meta["system"] = {{"f", std::vector<double>(sys->f.data(), sys->f.data() + sys->f.size())},
                      {"A", matrix_to_json(sys->A)},
                      {"B", matrix_to_json(sys->B)}};
  }

  if (a.out.empty()) {
    write_csv(out, *panel, true);
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw Error(ErrorKind::io, "cannot write '" + a.out + "'");
    write_csv(file, *panel, true);
  }
  const std::string meta_path = !a.meta.empty() ? a.meta : (a.out.empty() ? "" : a.out + ".meta.json");
  if (!meta_path.empty()) {
    std::ofstream file(meta_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::io, "cannot write '" + meta_path + "'");
    file << meta.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-flow causality analysis of multivariate time series"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  std::uint64_t seed_value = 0;
  app.add_option("--k", g.k, "Forward-differencing stride (>= 1)")->check(CLI::PositiveNumber);
  app.add_option_function<double>("--dt", [&](const double& v) { g.dt = v; },
                                  "Time step; overrides the time column")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Emit JSON instead of text");
  auto* seed_opt = app.add_option("--seed", seed_value, "Seed for randomized work");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = runtime default)");
  app.add_option("--alpha", g.alpha, "Significance level for graphs")->check(CLI::Range(0.0, 1.0));
  app.add_option("--correction", g.correction, "none | bonferroni | benjamini_hochberg");
  app.add_option("--surrogates", g.surrogates, "Surrogate count for nonparametric p values");
  app.add_option("--surrogate-method", g.method, "circular_shift | permutation");
  app.add_flag("--normalize", g.normalize, "Report relative-importance normalized flows");
  app.add_flag("--per-step", g.per_step, "Report flows per sample step instead of per unit time");
  app.add_flag("--strict-repro", g.strict_repro, "Require --seed for randomized subcommands");
  app.add_option("--delimiter", g.delimiter, "CSV delimiter");
  app.add_flag("--no-header", g.no_header, "CSV has no header row");
  app.add_option_function<std::string>("--time-column", [&](const std::string& v) { g.time_column = v; },
                                       "Name of the CSV time column (default: a leading t/time column)");

  std::string path;
  PairArgs pair;

  auto* estimate = app.add_subcommand("estimate", "Information flow between two series");
  estimate->add_option("csv", path, "Input CSV")->required();
  estimate->add_option("--source", pair.source, "Source series (label or 1-based index)")->required();
  estimate->add_option("--target", pair.target, "Target series (label or 1-based index)")->required();

  auto* matrix = app.add_subcommand("matrix", "All pairwise flows and self-influence");
  matrix->add_option("csv", path, "Input CSV")->required();

  std::string format = "dot";
  std::string graph_out;
  auto* graph = app.add_subcommand("graph", "Significance-filtered causal graph");
  graph->add_option("csv", path, "Input CSV")->required();
  graph->add_option("--format", format, "dot | json");
  graph->add_option("--out", graph_out, "Output file (default stdout)");

  std::size_t window = 0;
  std::size_t step = 0;
  auto* win = app.add_subcommand("window", "Running-window flow analysis");
  win->add_option("csv", path, "Input CSV")->required();
  win->add_option("--window", window, "Window length in samples")->required();
  win->add_option("--step", step, "Step between windows in samples (default: window)");
  win->add_option("--source", pair.source, "Source series");
  win->add_option("--target", pair.target, "Target series");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a benchmark or a linear SDE");
  simulate->add_option("--benchmark", sim.benchmark,
                       "one_way_2d | chain_3 | confounder_3 | independent_d | henon");
  simulate->add_option("--system", sim.system, "JSON file with f, A, B");
  simulate->add_option("--n", sim.n, "Samples to keep")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  simulate->add_option("--burn-in", sim.burn_in, "Discarded initial steps");
  simulate->add_option("--d", sim.d, "Dimension for independent_d");
  simulate->add_option("--out", sim.out, "CSV output path (default stdout)");
  simulate->add_option("--meta", sim.meta, "Metadata JSON path (default <out>.meta.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  try {
    kernels::set_thread_count(g.jobs);
    if (g.k < 1) throw Error(ErrorKind::usage, "--k must be at least 1");
    if (estimate->parsed()) return cmd_estimate(g, path, pair, out, err);
    if (matrix->parsed()) return cmd_matrix(g, path, out, err);
    if (graph->parsed()) return cmd_graph(g, path, format, graph_out, out, err);
    if (win->parsed()) return cmd_window(g, path, pair, window, step, out, err);
    if (simulate->parsed()) return cmd_simulate(g, sim, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace infoflow::cli
