// Serial reference vs blocked OpenMP kernels.
//
//   bench_kernels [samples] [dims] [reps]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <thread>

#include "infoflow/estimator.hpp"
#include "infoflow/kernels.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/simulate.hpp"

using namespace infoflow;

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

int main(int argc, char** argv) {
  const long n = argc > 1 ? std::atol(argv[1]) : 1000000;
  const long d = argc > 2 ? std::atol(argv[2]) : 8;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 5;

  SeriesMatrix X(d, n);
  std::mt19937_64 gen(1);
  std::normal_distribution<double> nd;
  for (long i = 0; i < d; ++i)
    for (long m = 0; m < n; ++m) X(i, m) = nd(gen);

  volatile double sink = 0.0;
  const double serial = best_of(reps, [&] { sink = sink + kernels::serial::row_moments(X).cov(0, 0); });
  std::printf("row_moments n=%ld d=%ld\n", n, d);
  std::printf("  serial          %8.4f s\n", serial);

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  Matrix reference = kernels::parallel::row_moments(X).cov;
  for (unsigned threads = 1; threads <= std::max(4u, hw); threads *= 2) {
    kernels::set_thread_count(static_cast<int>(threads));
    const double t = best_of(reps, [&] { sink = sink + kernels::parallel::row_moments(X).cov(0, 0); });
    const bool same = kernels::parallel::row_moments(X).cov == reference;
    std::printf("  parallel x%-3u   %8.4f s  speedup %.2f%s\n", threads, t, serial / t,
                same ? "" : "  (MISMATCH)");
  }
  const double gap = (kernels::serial::row_moments(X).cov - reference).cwiseAbs().maxCoeff();
  std::printf("  max |serial - parallel| = %.3e\n", gap);

  // surrogate loop: one flow refit per surrogate
  const auto run = benchmark("one_way_2d", {}, 20000, 3);
  for (unsigned threads = 1; threads <= std::max(4u, hw); threads *= 2) {
    kernels::set_thread_count(static_cast<int>(threads));
    const double t = best_of(reps, [&] {
      sink = sink + surrogate_flows(run.panel, 1, 0, 1, {.n_surrogates = 199, .seed = 1})[0];
    });
    std::printf("surrogates n=20000 x199, threads %-3u %8.4f s\n", threads, t);
  }
  std::printf("hardware threads: %u\n", hw);
  return 0;
}
