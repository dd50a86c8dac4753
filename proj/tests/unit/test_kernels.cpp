#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "levelcurve/kernels.hpp"
#include "levelcurve/polynomial.hpp"

using lvl::simd::Isa;

namespace {
bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
}  // namespace

TEST_CASE("scalar poly_abs2 agrees with complex Horner") {
  const std::vector<double> cr{1.0, 0.0, -2.0, 0.5}, ci{0.0, 1.0, 0.0, -0.25};
  const lvl::Polynomial p({lvl::Complex(0.5, -0.25), lvl::Complex(-2, 0), lvl::Complex(0, 1), lvl::Complex(1, 0)});
  std::vector<double> x{0.3, -1.2, 2.0}, y{0.1, 0.7, -0.4}, out(3);
  lvl::simd::scalar::poly_abs2_batch(cr.data(), ci.data(), cr.size(), x.data(), y.data(), out.data(), 3);
  for (int k = 0; k < 3; ++k) {
    const double ref = std::norm(p(lvl::Complex(x[k], y[k])));
    CHECK(std::abs(out[k] - ref) <= 1e-13 * (1.0 + ref));
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  if (!lvl::simd::isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence test runs the scalar path twice");
  }
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial) * 7;  // exercises the scalar tail
    const std::size_t nc = 1 + static_cast<std::size_t>(trial % 11);
    std::vector<double> cr(nc), ci(nc), x(n), y(n);
    for (auto* v : {&cr, &ci, &x, &y})
      for (auto& e : *v) e = u(rng);
    std::vector<double> a(n), b(n);
    lvl::simd::poly_abs2_batch(Isa::Scalar, cr.data(), ci.data(), nc, x.data(), y.data(), a.data(), n);
    lvl::simd::poly_abs2_batch(Isa::Avx2, cr.data(), ci.data(), nc, x.data(), y.data(), b.data(), n);
    CHECK(bit_equal(a, b));

    const std::size_t m = 3 + static_cast<std::size_t>(trial) * 5;
    std::vector<double> qx(m), qy(m);
    for (auto* v : {&qx, &qy})
      for (auto& e : *v) e = u(rng);
    std::vector<double> da(n, std::numeric_limits<double>::infinity()), db = da;
    lvl::simd::min_dist2_batch(Isa::Scalar, x.data(), y.data(), n, qx.data(), qy.data(), m, da.data());
    lvl::simd::min_dist2_batch(Isa::Avx2, x.data(), y.data(), n, qx.data(), qy.data(), m, db.data());
    CHECK(bit_equal(da, db));
  }
}

TEST_CASE("min_dist2 accumulates across blocks") {
  const std::vector<double> px{0.0}, py{0.0}, qx{3.0, 1.0}, qy{4.0, 1.0};
  std::vector<double> out{std::numeric_limits<double>::infinity()};
  lvl::simd::min_dist2_batch(px.data(), py.data(), 1, qx.data(), qy.data(), 1, out.data());
  CHECK(out[0] == 25.0);
  lvl::simd::min_dist2_batch(px.data(), py.data(), 1, qx.data() + 1, qy.data() + 1, 1, out.data());
  CHECK(out[0] == 2.0);
}

TEST_CASE("dispatch reports a usable variant") {
  const Isa isa = lvl::simd::active_isa();
  CHECK(lvl::simd::isa_available(isa));
  CHECK(std::strlen(lvl::simd::isa_name(isa)) > 0);
}
