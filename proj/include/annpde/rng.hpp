// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace annpde {

/// splitmix64 mixing step. Used for seed derivation and stable hashing so
/// that results do not depend on implementation-defined stdlib behavior.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic sub-seed for stream `stream` of a generator seeded with
/// `base`. Chains and trials derive their private seeds through this.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base ^ (0x9e3779b97f4a7c15ull * (stream + 1));
  return splitmix64(s);
}

/// Seeded random source. Wraps std::mt19937_64 (whose output sequence is
/// fully specified by the standard) and converts to doubles by hand;
/// std::uniform_real_distribution and friends are implementation-defined
/// and would break cross-toolchain reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double next_uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller. Draws exactly two uniforms per call.
  double next_gaussian() {
    const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform bit.
  bool next_bit() { return (eng_() >> 63) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace annpde
