#include <cmath>

#include "doctest.h"
#include "levelcurve/corpus.hpp"
#include "levelcurve/error.hpp"
#include "levelcurve/order_topology.hpp"

using lvl::Complex;
using lvl::CurveRef;

namespace {
CurveRef curve(const lvl::RationalFn& f, double eps, Complex seed, const lvl::DomainSpec& d = {}) {
  return CurveRef::level_curve(lvl::trace_component(f, eps, seed, d));
}
Complex root5(int k) { return std::polar(1.0, 2.0 * M_PI * k / 5); }
}  // namespace

TEST_CASE("z^5 - 1: nesting of level curves") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const CurveRef small = curve(f, 0.5, std::pow(1.5, 0.2));
  const CurveRef other = curve(f, 0.5, std::pow(1.5, 0.2) * root5(1));
  const CurveRef big = curve(f, 1.5, std::pow(2.5, 0.2));
  CHECK(lvl::precedes(small, big));
  CHECK_FALSE(lvl::precedes(big, small));
  CHECK_FALSE(lvl::precedes(small, other));
  CHECK_FALSE(lvl::precedes(other, small));
  CHECK_THROWS_AS(lvl::precedes(small, small), lvl::UsageError);
}

TEST_CASE("z^5 - 1: critical set and maximal element") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto c = lvl::critical_level_curves(f, lvl::DomainSpec::plane());
  CHECK(c.curve_count() == 1);
  REQUIRE(c.members.size() == 6);
  const CurveRef& crit = c.members[0];
  CHECK(crit.level == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(crit.component.vertices.size() == 1);
  CHECK(std::abs(crit.component.vertices[0].z) < 1e-6);
  const auto r = lvl::order_report(c);
  CHECK(r.maximal == 0);
  CHECK(r.hasse.size() == 5);
  for (const auto& [lo, hi] : r.hasse) CHECK(hi == 0);
  CHECK(&lvl::maximal_component(c) == &c.members[0]);
}

TEST_CASE("z^n: only the zero") {
  const auto f = lvl::parse_function("poly:1,0,0,0");
  const auto c = lvl::critical_level_curves(f, lvl::DomainSpec::plane());
  CHECK(c.curve_count() == 0);
  REQUIRE(c.members.size() == 1);
  CHECK(c.members[0].kind == CurveRef::Kind::Point);
  CHECK(c.members[0].mult == 3);
  CHECK(lvl::maximal_component(c).kind == CurveRef::Kind::Point);
}

TEST_CASE("Blaschke product on the disk: one critical curve between two zeros") {
  const auto f = lvl::parse_function("blaschke:0.5,-0.5/");
  const auto c = lvl::critical_level_curves(f, lvl::DomainSpec::unit_disk());
  REQUIRE(c.curve_count() == 1);
  CHECK(std::abs(c.members[0].component.vertices.at(0).z) < 1e-9);
  CHECK(c.members[0].graph->bounded_face_count() == 2);
  CHECK(lvl::order_report(c).maximal == 0);
}

TEST_CASE("Blaschke product with two nested critical curves") {
  const auto f = lvl::parse_function("blaschke:0.7,0.3,-0.5/");
  const auto c = lvl::critical_level_curves(f, lvl::DomainSpec::unit_disk());
  REQUIRE(c.curve_count() == 2);
  const auto r = lvl::order_report(c);
  const int lower = c.members[0].level < c.members[1].level ? 0 : 1;
  CHECK(r.relation[static_cast<std::size_t>(lower)][static_cast<std::size_t>(1 - lower)]);
  CHECK(r.maximal == 1 - lower);
}

TEST_CASE("separating curves") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto crit = curve(f, 1.0, std::pow(2.0, 0.2));
  const auto s = lvl::separating_curve(f, crit, {Complex(1.0, 0.0)});
  CHECK(s.curve.level < 1.0);
  CHECK_FALSE(s.curve.is_critical());
  CHECK(s.k_in_bounded);
  CHECK_FALSE(s.l_in_bounded);

  const auto g = lvl::parse_function("poly:1,0,0");
  const auto circle = curve(g, 4.0, Complex(2.0, 0.0));
  const auto s2 = lvl::separating_curve(g, circle, {Complex(0.0, 0.0)});
  const double r = std::sqrt(s2.curve.level);
  CHECK(r > 0.0);
  CHECK(r < 2.0);
  for (const Complex z : s2.curve.all_points()) CHECK(std::abs(std::abs(z) - r) < 1e-6);

  const auto small = curve(f, 0.5, std::pow(1.5, 0.2));
  const auto s3 = lvl::separating_curve(f, small, {root5(1), root5(2), root5(3), root5(4)});
  CHECK(s3.l_in_bounded);
  CHECK_FALSE(s3.k_in_bounded);
  CHECK(s3.min_critical_distance > 0.0);
}

TEST_CASE("two-curve witnesses") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto c = lvl::critical_level_curves(f, lvl::DomainSpec::plane());
  const auto a = curve(f, 0.5, std::pow(1.5, 0.2));
  const auto b = curve(f, 0.5, std::pow(1.5, 0.2) * root5(1));
  const auto w = lvl::two_curve_critical_witness(c, a, b);
  CHECK(w.member == 0);
  CHECK(w.face1 != w.face2);
  CHECK(c.members[0].graph->face_of_point(1.0) == w.face1);
  CHECK(c.members[0].graph->face_of_point(root5(1)) == w.face2);
  const auto big = curve(f, 1.5, std::pow(2.5, 0.2));
  CHECK_THROWS_AS(lvl::two_curve_critical_witness(c, a, big), lvl::UsageError);

  const auto g = lvl::parse_function("poly:1,0,-1");
  const auto cg = lvl::critical_level_curves(g, lvl::DomainSpec::plane());
  const auto wg = lvl::two_curve_critical_witness(cg, curve(g, 0.5, Complex(std::sqrt(1.5), 0.0)),
                                                  curve(g, 0.5, Complex(-std::sqrt(1.5), 0.0)));
  CHECK(cg.members[static_cast<std::size_t>(wg.member)].level == doctest::Approx(1.0));
}

TEST_CASE("strict order and unique maximum on random polynomials") {
  lvl::Corpus corpus(77);
  for (int t = 0; t < 10; ++t) {
    const auto p = corpus.disk_roots(corpus.integer(3, 6));
    const auto f = lvl::RationalFn::polynomial(p);
    const auto c = lvl::critical_level_curves(f, lvl::DomainSpec::plane());
    CHECK(c.curve_count() >= 1);
    const auto r = lvl::order_report(c);
    CHECK(r.maximal >= 0);
    CHECK(c.members[static_cast<std::size_t>(r.maximal)].kind == CurveRef::Kind::LevelCurve);
  }
}
