#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "rossonct/scalar.hpp"

namespace rossonct {

/// Seeded generator with platform-independent uniform and normal draws.
///
/// std::*_distribution output is implementation-defined, so the transforms are
/// done by hand on top of mt19937_64 to keep CSV output byte-identical across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Scalar random_scalar(Field f, Rng& rng) {
  double c[4] = {0, 0, 0, 0};
  for (int q = 0; q < real_dim(f); ++q) c[q] = rng.normal();
  return Scalar(f, c[0], c[1], c[2], c[3]);
}

inline Scalar random_nonzero_scalar(Field f, Rng& rng) {
  Scalar s = random_scalar(f, rng);
  while (s.modulus() < 1e-3) s = random_scalar(f, rng);
  return s;
}

inline Scalar random_imaginary(Field f, Rng& rng) { return random_scalar(f, rng).im_part(); }

inline FVector random_fvector(Field f, std::size_t n, Rng& rng) {
  FVector v(f, n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, random_scalar(f, rng));
  return v;
}

}  // namespace rossonct
