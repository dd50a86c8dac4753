#include <cmath>

#include "brute_force.hpp"
#include "doctest.h"
#include "levelcurve/corpus.hpp"
#include "levelcurve/error.hpp"
#include "levelcurve/gauss_lucas.hpp"

using lvl::Complex;
using lvl::Polynomial;

TEST_CASE("convex hull is counterclockwise and minimal") {
  const std::vector<Complex> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {1, 0.5}};
  const auto h = lvl::convex_hull(pts);
  REQUIRE(h.size() == 4);
  double area = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Complex a = h[i], b = h[(i + 1) % h.size()];
    area += a.real() * b.imag() - b.real() * a.imag();
  }
  CHECK(area > 0.0);
  CHECK(lvl::hull_signed_distance(h, {0.5, 0.5}) == doctest::Approx(-0.5));
  CHECK(lvl::hull_signed_distance(h, {2.0, 0.5}) == doctest::Approx(1.0));
  CHECK(lvl::convex_hull({{1, 1}, {1, 1}}).size() == 1);
  CHECK(lvl::convex_hull({{0, 0}, {1, 1}, {2, 2}}).size() == 2);
}

TEST_CASE("z^3 - z: critical points +-1/sqrt3 inside the segment hull") {
  const auto r = lvl::check_gauss_lucas(Polynomial({0, -1, 0, 1}));
  REQUIRE(r.critical_points.size() == 2);
  for (const Complex c : r.critical_points) CHECK(std::abs(std::abs(c.real()) - 1.0 / std::sqrt(3.0)) < 1e-12);
  CHECK(r.hull.size() == 2);
  CHECK(r.max_signed_distance < 0.0);
}

TEST_CASE("z^n: single-point hull") {
  const auto r = lvl::check_gauss_lucas(Polynomial::monomial(6));
  CHECK(r.hull.size() == 1);
  CHECK(std::abs(r.max_signed_distance) <= 1e-8);
  CHECK(r.holds);
}

TEST_CASE("z^5 - 1: centre strictly inside the pentagon") {
  const auto r = lvl::check_gauss_lucas(Polynomial({-1, 0, 0, 0, 0, 1}));
  CHECK(r.hull.size() == 5);
  CHECK(r.max_signed_distance == doctest::Approx(-std::cos(M_PI / 5)).epsilon(1e-9));
}

TEST_CASE("500 random polynomials agree with the support-function oracle") {
  lvl::Corpus corpus(11);
  for (int t = 0; t < 500; ++t) {
    const Polynomial p = corpus.unit_box(corpus.integer(2, 10));
    const auto r = lvl::check_gauss_lucas(p);
    CHECK(r.max_signed_distance <= 1e-8 * r.scale);
    for (const Complex c : r.critical_points) CHECK(oracle::hull_excess(r.zeros, c, 720) <= 1e-8 * r.scale);
  }
}

TEST_CASE("a critical point outside the hull is reported and rejected") {
  // Not a genuine polynomial/critical pair: feed the hull routine directly.
  const std::vector<Complex> hull = lvl::convex_hull({{-1, 0}, {1, 0}, {0, 1}});
  CHECK(lvl::hull_signed_distance(hull, {0, -0.5}) == doctest::Approx(0.5));
  CHECK(oracle::hull_excess({{-1, 0}, {1, 0}, {0, 1}}, {0, -0.5}) == doctest::Approx(0.5).epsilon(1e-5));
}

TEST_CASE("replay is not applicable inside the hull") {
  const Polynomial p({0, -1, 0, 1});
  const auto r = lvl::replay_level_curve_argument(p, Complex(1.0 / std::sqrt(3.0), 0.0));
  CHECK_FALSE(r.applicable);
  lvl::Corpus corpus(5);
  for (int t = 0; t < 50; ++t) {
    const Polynomial q = corpus.unit_box(corpus.integer(2, 7));
    for (const Complex c : lvl::gauss_lucas_report(q).critical_points)
      CHECK_FALSE(lvl::replay_level_curve_argument(q, c).applicable);
  }
}

TEST_CASE("corrupted instances: the product inequality holds on traced points") {
  lvl::Corpus corpus(21);
  for (int t = 0; t < 10; ++t) {
    const auto inst = lvl::corrupted_instance(corpus.disk_points(corpus.integer(2, 5)));
    Complex v, d;
    inst.q.eval_with_derivative(inst.critical, v, d);
    REQUIRE(std::abs(d) < 1e-10 * inst.q.abs_bound(2.0));
    const auto r = lvl::replay_level_curve_argument(inst.q, inst.critical, inst.declared_zeros);
    REQUIRE(r.applicable);
    CHECK(r.z1.real() > 1.0);
    CHECK(r.z2.real() > r.z1.real());
    CHECK(std::abs(r.z1.imag() - r.s) < 1e-12);
    CHECK(std::abs(r.z2.imag() - r.s) < 1e-12);
    // Independent recomputation of both products from the declared zeros.
    double p1 = 1.0, p2 = 1.0;
    for (const Complex w : inst.declared_zeros) {
      const Complex wn = (w - r.center) * r.rotation / r.radius;
      CHECK(std::abs(wn) < 1.0);
      p1 *= std::abs(r.z1 - wn);
      p2 *= std::abs(r.z2 - wn);
    }
    CHECK(p1 == doctest::Approx(r.product1).epsilon(1e-12));
    CHECK(p2 == doctest::Approx(r.product2).epsilon(1e-12));
    CHECK(p1 < p2);
    CHECK(r.inequality_holds);
  }
}

TEST_CASE("monotone product along horizontal rays right of 1") {
  lvl::Corpus corpus(8);
  for (int t = 0; t < 100; ++t) {
    const auto w = corpus.disk_points(corpus.integer(1, 8));
    const double s = corpus.uniform(-3.0, 3.0);
    double prev = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const Complex z(1.0 + 0.02 * k, s);
      double prod = 1.0;
      for (const Complex x : w) prod *= std::abs(z - x);
      if (k > 0) CHECK(prod > prev);
      prev = prod;
    }
  }
}
