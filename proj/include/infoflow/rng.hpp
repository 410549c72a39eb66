#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace infoflow {

/// Seeded generator with a platform-independent output sequence.
///
/// Uniform draws come from std::mt19937_64 (its sequence is fixed by the
/// standard); normals use the Marsaglia polar method and bounded integers use
/// rejection sampling, both implemented here because the standard
/// distributions are implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+marsaglia-polar/1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double normal();
  /// Uniform integer on [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Seed of substream `index` derived from `seed` (splitmix64 finalizer).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace infoflow
