#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "nk/poly.hpp"

namespace nk {

// Seeded generator whose outputs are identical on every platform:
// mt19937_64 is fully specified, and doubles are built from its raw bits
// rather than through the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  Complex uniform_box(double half_width) {
    double re = uniform(-half_width, half_width);
    double im = uniform(-half_width, half_width);
    return {re, im};
  }
  Complex polar(double r_lo, double r_hi) {
    double r = uniform(r_lo, r_hi);
    double theta = uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, theta);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nk
