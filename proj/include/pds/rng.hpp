#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace pds {

/// Seed-deterministic generator; the draw procedures below are fixed
/// arithmetic over the raw 64-bit stream so runs reproduce bit-for-bit for a
/// given seed within one build.
class rng {
public:
  explicit rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : bits() % n; }

  int range(int lo, int hi) { // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// uniform in [0, 1)
  double real() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// uniform in [-1, 1]
  double symmetric() { return 2.0 * real() - 1.0; }

  std::complex<double> complex_box() { return {symmetric(), symmetric()}; }

  bool chance(double p) { return real() < p; }

private:
  std::mt19937_64 engine_;
};

} // namespace pds
