#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace latlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator: the k-th draw for (seed, index, stream) is a pure
// function of those four numbers, so sample i gets the same values no matter
// which worker evaluates it or in which order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0)
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

  std::uint64_t next() { return splitmix64(key_ ^ splitmix64(counter_++)); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Standard normal by Box-Muller; the spare value is discarded to keep the
  // draw count per call fixed.
  double gaussian() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace latlab
