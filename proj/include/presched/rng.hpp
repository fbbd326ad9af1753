#pragma once

#include <cstdint>
#include <random>

namespace presched {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// bounded draws are done here by rejection.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % bound;
  }
  // uniform in [0,1) with 53 bits
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace presched
