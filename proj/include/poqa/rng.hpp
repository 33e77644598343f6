#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace poqa {

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard; the distributions below are hand-rolled because the standard
// library's distribution objects are implementation-defined and would break
// frozen-fixture tests when switching toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal via Box-Muller; two uniforms per draw
  double normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 step, used to derive independent child seeds from a base seed.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

// FNV-1a over a canonical key string; stable across platforms and runs.
std::uint64_t stable_hash(std::string_view key);

}  // namespace poqa
