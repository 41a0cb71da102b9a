#pragma once

#include <cstdint>
#include <random>

namespace latticeflux {

/**
 * Deterministic uniform stream used everywhere randomness appears, so a
 * seed fixes every downstream artifact byte for byte. The 53-bit draw
 * (top bits of mt19937_64, scaled by 2^-53) is exactly representable and
 * identical across platforms, unlike std::uniform_real_distribution.
 */
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0, 1).
  double next() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace latticeflux
