#include "levelcurve/corpus.hpp"

#include <cmath>

namespace lvl {

Complex Corpus::in_unit_disk() {
  for (;;) {
    const Complex z(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    if (std::abs(z) < 0.98) return z;
  }
}

Polynomial Corpus::unit_box(int degree) {
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
  while (std::abs(c.back()) < 0.1) c.back() = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
  return Polynomial(std::move(c));
}

Polynomial Corpus::disk_roots(int degree) {
  const std::vector<Complex> r = disk_points(degree);
  const double mod = uniform(1.0, 1.5);
  const double arg = uniform(0.0, 2.0 * M_PI);
  return Polynomial::from_roots(r, std::polar(mod, arg));
}

std::vector<Complex> Corpus::disk_points(int n) {
  std::vector<Complex> r(static_cast<std::size_t>(n));
  for (auto& z : r) z = in_unit_disk();
  return r;
}

}  // namespace lvl
