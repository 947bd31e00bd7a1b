#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace entrokit {

// Seeded generator with pinned derivations so that identical seeds give
// bit-identical streams on every platform: doubles come from the top 53
// bits of an mt19937_64 draw, indices from floor(u01*n), and gaussians
// from Box-Muller on exactly two draws (no cached spare).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double u01() { return static_cast<double>(engine_() >> 11) * kInv53; }

  // Uniform in (0, 1]; safe as a log argument.
  double u01_positive() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * kInv53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(u01() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

  // Standard normal deviate.
  double gaussian() {
    const double u1 = u01_positive();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  static constexpr double kTwoPi = 6.283185307179586476925287;
  std::mt19937_64 engine_;
};

}  // namespace entrokit
