#pragma once

#include <bit>
#include <cstdint>

namespace swarmsim {

/// SplitMix64 pseudo-random generator: one 64-bit word of state, three
/// xorshift/multiply rounds per draw.  It is the project-wide generator
/// because the output stream is bit-reproducible on any platform — the
/// state update uses only unsigned 64-bit arithmetic, so CSV outputs are
/// identical across machines and compilers.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Next 64 uniformly distributed bits.
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits: u = (x >> 11) * 2^-53.
  double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Folds a value into a running 64-bit hash with one full SplitMix64
/// avalanche round.  Used to derive per-trial seeds from a master seed and
/// the trial's cell coordinates; the scramble diffuses near-identical
/// inputs (consecutive trial indices) across the whole output space.
inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = (h ^ v) + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Bit pattern of a double, for hashing floating-point cell coordinates
/// (hashing the bits avoids any dependence on decimal formatting).
inline std::uint64_t double_bits(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace swarmsim
