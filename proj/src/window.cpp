#include "infoflow/window.hpp"

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"
#include "parallel_for.hpp"

namespace infoflow {

std::size_t window_count(std::size_t n, std::size_t window, std::size_t step) {
  if (window == 0 || step == 0) throw Error(ErrorKind::usage, "window and step must be positive");
  if (window > n)
    throw Error(ErrorKind::usage, "window length " + std::to_string(window) +
                                      " exceeds series length " + std::to_string(n));
  return (n - window) / step + 1;
}

WindowedFlowSeries sliding_window_flows(const TimeSeriesPanel& panel,
                                        const WindowOptions& options) {
  const std::size_t d = panel.dims();
  const std::size_t count = window_count(panel.samples(), options.window, options.step);
  WindowedFlowSeries out;
  out.window_length = options.window;
  out.step = options.step;
  out.pairs = options.pairs;
  if (out.pairs.empty()) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (i != j) out.pairs.emplace_back(j, i);
      }
    }
  }
  for (const auto& [source, target] : out.pairs) {
    if (source >= d || target >= d) throw Error(ErrorKind::usage, "pair index out of range");
    if (source == target) throw Error(ErrorKind::invalid_pair, "source equals target");
  }
  if (options.n_surrogates > 0 && options.n_surrogates < kMinSurrogates)
    throw Error(ErrorKind::resolution, "at least 19 surrogates are required");

  out.rows.resize(count);
  detail::parallel_for(static_cast<long>(count), count > 1, [&](long w) {
    WindowRow& row = out.rows[static_cast<std::size_t>(w)];
    row.start = static_cast<std::size_t>(w) * options.step;
    row.center = panel.t0() +
                 (static_cast<double>(row.start) + 0.5 * static_cast<double>(options.window - 1)) *
                     panel.dt();
    row.flows.assign(out.pairs.size(), std::nullopt);
    const TimeSeriesPanel slice = panel.slice(row.start, options.window);
    std::optional<FlowMatrix> matrix;
    try {
      FlowMatrixOptions fm;
      fm.k = options.k;
      fm.normalize = options.normalize;
      matrix.emplace(estimate_flow_matrix(slice, fm));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::insufficient_data || e.kind() == ErrorKind::singular_covariance ||
          e.kind() == ErrorKind::degenerate_normalizer || e.kind() == ErrorKind::invalid_stride)
        return;
      throw;
    }
    for (std::size_t p = 0; p < out.pairs.size(); ++p) {
      const auto [source, target] = out.pairs[p];
      FlowEstimate f = matrix->flow(source, target);
      if (options.n_surrogates > 0) {
        SurrogateOptions so;
        so.n_surrogates = options.n_surrogates;
        so.method = options.method;
        so.seed = substream_seed(substream_seed(options.seed, static_cast<std::uint64_t>(w)), p);
        attach(f, surrogate_significance(slice, source, target, options.k, so));
      }
      row.flows[p] = f;
    }
  });
  return out;
}

}  // namespace infoflow
