#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "levelcurve/polynomial.hpp"

namespace lvl {

/// Seeded random polynomials. Uniform draws use the top 53 bits of the
/// engine output so the corpus is identical across standard libraries.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
  Complex in_unit_disk();

  /// Coefficients uniform in the box [-1,1]^2, leading coefficient bounded
  /// away from zero.
  Polynomial unit_box(int degree);
  /// Roots uniform in the unit disk, leading coefficient of modulus in [1, 1.5].
  /// Used wherever the level sets are traced: coefficient-box polynomials can
  /// have zeros far out with tiny level curves around them.
  Polynomial disk_roots(int degree);
  std::vector<Complex> disk_points(int n);

 private:
  std::mt19937_64 rng_;
};

}  // namespace lvl
