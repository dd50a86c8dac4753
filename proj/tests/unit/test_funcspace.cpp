#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "levelcurve/error.hpp"
#include "levelcurve/funcspace.hpp"

using lvl::Complex;
using lvl::RationalFn;

namespace {
bool has_point(const std::vector<lvl::RootMult>& v, Complex z, int mult, double tol) {
  for (const auto& r : v)
    if (std::abs(r.z - z) < tol && r.mult == mult) return true;
  return false;
}
}  // namespace

TEST_CASE("eval and derivative on simple fixtures") {
  const RationalFn f = lvl::parse_function("poly:1,0,0,0,0,-1");
  CHECK(f.eval(0.0).value == Complex(-1, 0));
  CHECK(std::abs(f.eval_derivative(1.0).value - Complex(5, 0)) < 1e-14);
  const RationalFn g = lvl::parse_function("poly:1,0,0");
  CHECK(std::abs(g.eval(Complex(1, 1)).value - Complex(0, 2)) < 1e-15);
  CHECK(g.eval_derivative(0.0).value == Complex(0, 0));
}

TEST_CASE("poles evaluate to the infinity flag") {
  const RationalFn f = lvl::parse_function("rat:1/1,0");
  CHECK(f.eval(0.0).infinite);
  CHECK(f.eval_derivative(0.0).infinite);
  CHECK(std::isinf(f.abs(0.0)));
  const lvl::FnValue tiny = f.eval(1e-320);
  CHECK((tiny.infinite || std::isfinite(tiny.value.real())));
  CHECK(f.zeros().empty());
  REQUIRE(f.poles().size() == 1);
  CHECK(f.poles()[0].z == Complex(0, 0));
}

TEST_CASE("Blaschke factor has modulus one on the circle") {
  const RationalFn f = RationalFn::blaschke_ratio({Complex(0.5, 0)}, {});
  for (int k = 0; k < 8; ++k) {
    const Complex z = std::polar(1.0, 2.0 * M_PI * k / 8 + 0.1);
    CHECK(std::abs(std::abs(f.eval(z).value) - 1.0) < 1e-12);
  }
  CHECK(std::abs(f.eval(0.5).value) < 1e-15);
}

TEST_CASE("critical points with multiplicities") {
  const RationalFn f = lvl::parse_function("poly:1,0,0,0,0,-1");
  REQUIRE(f.critical_points().size() == 1);
  CHECK(f.critical_points()[0].mult == 4);
  CHECK(std::abs(f.critical_points()[0].z) < 1e-12);

  const RationalFn g = lvl::parse_function("poly:1,0,-1");
  REQUIRE(g.critical_points().size() == 1);
  CHECK(g.critical_points()[0].mult == 1);

  // f' = 3z^2 - 1, roots by the quadratic formula
  const RationalFn h = lvl::parse_function("poly:1,0,-1,0");
  const auto [r1, r2] = oracle::quadratic_roots(0.0, -1.0 / 3.0);
  CHECK(has_point(h.critical_points(), r1, 1, 1e-12));
  CHECK(has_point(h.critical_points(), r2, 1, 1e-12));
  for (const auto& c : h.critical_points()) CHECK(std::abs(3.0 * c.z * c.z - 1.0) < 1e-10);
}

TEST_CASE("critical points of a rational function exclude the pole factor") {
  // f = (z - 1) / z^3: N'D - ND' = z^3 - 3 z^2 (z - 1) = z^2 (3 - 2 z)
  const RationalFn f = lvl::parse_function("rat:1,-1/1,0,0,0");
  REQUIRE(f.critical_points().size() == 1);
  CHECK(std::abs(f.critical_points()[0].z - 1.5) < 1e-12);
  CHECK(f.reduced_critical_degree() == 1);
}

TEST_CASE("Blaschke ratio zeros and poles") {
  const RationalFn f = lvl::parse_function("blaschke:0.3,-0.4i/0.5");
  const lvl::DomainSpec disk = lvl::DomainSpec::unit_disk();
  const auto z = f.zeros_in(disk);
  const auto p = f.poles_in(disk);
  REQUIRE(z.size() == 2);
  REQUIRE(p.size() == 1);
  CHECK(has_point(z, Complex(0.3, 0), 1, 1e-12));
  CHECK(has_point(z, Complex(0, -0.4), 1, 1e-12));
  CHECK(has_point(p, Complex(0.5, 0), 1, 1e-12));
  // reflected points 1/conj(a) lie outside the disk; the reflection of a
  // zero of B2 is a pole of B2 and so a zero of f
  CHECK(f.zeros().size() + f.poles().size() == 6);
  CHECK(has_point(f.zeros(), Complex(2.0, 0), 1, 1e-12));
  CHECK(has_point(f.poles(), Complex(1.0 / 0.3, 0), 1, 1e-12));
  CHECK(has_point(f.poles(), Complex(0, -2.5), 1, 1e-12));
  for (const auto& r : f.zeros()) CHECK(std::abs(f.eval(r.z).value) < 1e-12);
  for (int k = 0; k < 16; ++k) {
    const Complex w = std::polar(1.0, 0.4 * k);
    CHECK(std::abs(std::abs(f.eval(w).value) - 1.0) < 1e-10);
  }
}

TEST_CASE("derivative agrees with central differences on random inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Complex> n(4), d(3);
    for (auto& x : n) x = Complex(u(rng), u(rng));
    for (auto& x : d) x = Complex(u(rng), u(rng));
    const RationalFn f = RationalFn::rational(lvl::Polynomial(n), lvl::Polynomial(d));
    const Complex z(u(rng), u(rng));
    bool near_pole = false;
    for (const auto& p : f.poles()) near_pole = near_pole || std::abs(p.z - z) < 0.1;
    if (near_pole) continue;
    const Complex exact = f.eval_derivative(z).value;
    const Complex fd = oracle::central_difference([&](Complex w) { return f.eval(w).value; }, z);
    CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("Taylor coefficients match derivatives") {
  const RationalFn f = lvl::parse_function("rat:1,2,3/1,0.5i");
  const Complex c(0.3, 0.2);
  const auto t = f.taylor(c, 3);
  CHECK(std::abs(t[0] - f.eval(c).value) < 1e-13);
  CHECK(std::abs(t[1] - f.eval_derivative(c).value) < 1e-12);
}

TEST_CASE("parser grammar") {
  CHECK(lvl::parse_complex("2") == Complex(2, 0));
  CHECK(lvl::parse_complex("-2.5i") == Complex(0, -2.5));
  CHECK(lvl::parse_complex("0.3-0.4i") == Complex(0.3, -0.4));
  CHECK(lvl::parse_complex("i") == Complex(0, 1));
  CHECK(lvl::parse_complex("-i") == Complex(0, -1));
  CHECK(lvl::parse_complex("1e-3+2e+1i") == Complex(1e-3, 20));
  CHECK_THROWS_AS(lvl::parse_complex("abc"), lvl::UsageError);
  CHECK_THROWS_AS(lvl::parse_function("sin:1"), lvl::UsageError);
  CHECK_THROWS_AS(lvl::parse_function("poly:3"), lvl::UsageError);            // constant
  CHECK_THROWS_AS(lvl::parse_function("rat:1,-1/1,-1"), lvl::UsageError);    // common root
  CHECK_THROWS_AS(lvl::parse_function("blaschke:1.2/"), lvl::UsageError);    // outside disk
  const auto d = lvl::parse_domain("rect:-1,-2,3,4");
  CHECK(d.kind == lvl::DomainSpec::Kind::Rectangle);
  CHECK(d.x1 == 3.0);
  CHECK(lvl::parse_domain("disk").kind == lvl::DomainSpec::Kind::UnitDisk);
}

TEST_CASE("unit disk domain rules") {
  const auto disk = lvl::DomainSpec::unit_disk();
  CHECK_THROWS_AS(lvl::validate_domain(lvl::parse_function("poly:1,0"), disk), lvl::UsageError);
  CHECK_THROWS_AS(lvl::validate_domain(lvl::parse_function("blaschke:0.2/0.5"), disk), lvl::UsageError);
  CHECK_NOTHROW(lvl::validate_domain(lvl::parse_function("blaschke:0.2,0.1i/0.5"), disk));
}

TEST_CASE("level radius bound encloses the level set") {
  const RationalFn f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const double R = f.level_radius_bound(1.5);
  CHECK(R >= std::pow(2.5, 0.2));
  const RationalFn g = lvl::parse_function("rat:2,0/1,1");  // |f| -> 2 at infinity
  CHECK_THROWS_AS(g.level_radius_bound(2.0), lvl::NumericalError);
}
