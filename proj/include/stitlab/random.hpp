#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace stitlab {

using Rng = std::mt19937_64;

/// Seed for the stream identified by (master_seed, name, index). Distinct names
/// or indices give unrelated streams; the mapping is stable across platforms.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0);

inline Rng make_stream(std::uint64_t master_seed, std::string_view name, std::uint64_t index = 0) {
  return Rng(derive_seed(master_seed, name, index));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform on (0, 1].
inline double uniform01_open_low(Rng& rng) { return 1.0 - uniform01(rng); }

inline double exponential(Rng& rng, double rate) { return -std::log(uniform01_open_low(rng)) / rate; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace stitlab
