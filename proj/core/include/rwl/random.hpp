#pragma once

#include <cstdint>
#include <random>

namespace rwl {

/// Seeded generator whose output is identical across standard libraries.
///
/// std::uniform_real_distribution is not specified bit-for-bit, so the
/// conversions to doubles and indices are done here from the raw
/// mt19937_64 stream (whose sequence the standard does pin down).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  /// Child stream for an independent sub-task; deterministic in (state, salt).
  Rng fork(std::uint64_t salt) { return Rng(engine_() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rwl
