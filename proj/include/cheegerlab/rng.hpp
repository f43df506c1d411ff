#pragma once

#include <cstdint>
#include <random>

namespace cheegerlab {

// Seedable generator used by every randomized check. Doubles are built from
// the top 53 bits of a mt19937_64 word instead of going through
// std::uniform_real_distribution, so a seed reproduces the exact same stream
// on any standard library.
struct Rng {
  std::mt19937_64 gen;

  explicit Rng(std::uint64_t seed) : gen(seed) {}

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

  // Uniform in [a, b).
  double uniform(double a, double b) { return a + (b - a) * unit(); }

  bool coin() { return (gen() & 1u) != 0; }

  // Uniform integer in [a, b] (small ranges only; modulo bias negligible).
  int uniform_int(int a, int b) {
    return a + static_cast<int>(gen() % static_cast<std::uint64_t>(b - a + 1));
  }
};

}  // namespace cheegerlab
