#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

// Deterministic splittable RNG.
//
// Every estimator in this library draws from a SplitMix64 stream whose state
// is derived from (seed, tag, stratum...) by hashing, never from global
// state.  Two consequences we rely on everywhere:
//   * results are bit-for-bit reproducible for a fixed seed, and
//   * strata can be evaluated in any order (or on any thread) without
//     changing the numbers, because each stratum owns its own stream.

namespace graphon {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Finalizer from splitmix64; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Key for a child stream. Chain calls to descend: (seed, tag) -> (key, i) -> ...
constexpr std::uint64_t substream(std::uint64_t key, std::uint64_t index) {
  return mix64(key ^ mix64(index + kGolden));
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal pair (Box-Muller).
  std::pair<double, double> next_normal_pair() {
    double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
    double u2 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::uint64_t state_;
};

// Stream tags so unrelated estimators never share a stream even under the
// same user seed.
namespace stream_tag {
inline constexpr std::uint64_t psi_pairs = 0x50414952u;     // pair sampling in psi
inline constexpr std::uint64_t holder_scan = 0x4f534343u;   // oscillation scans
inline constexpr std::uint64_t latents = 0x4c41544eu;       // sampler node latents
inline constexpr std::uint64_t edges = 0x45444745u;         // sampler edge coins
inline constexpr std::uint64_t validate = 0x56414c44u;      // symmetry/range audit
inline constexpr std::uint64_t cd_dirs = 0x43444952u;       // direction search
inline constexpr std::uint64_t cd_z = 0x43445a5au;          // shared z sample
inline constexpr std::uint64_t inner = 0x494e4e52u;         // standalone inner_distance
}  // namespace stream_tag

}  // namespace graphon
