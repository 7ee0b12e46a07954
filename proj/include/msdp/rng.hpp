#pragma once

// Seeded helpers on top of std::mt19937_64. The standard distributions are
// implementation-defined, so these are used wherever output must be the same
// across standard libraries.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>

namespace msdp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  template <class It>
  void shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n)
      std::iter_swap(first + (n - 1),
                     first + static_cast<std::ptrdiff_t>(
                                 below(static_cast<std::uint64_t>(n))));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace msdp
