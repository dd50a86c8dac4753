#include <cmath>

#include "brute_force.hpp"
#include "doctest.h"
#include "levelcurve/error.hpp"
#include "levelcurve/tracer.hpp"

using lvl::Complex;

namespace {

void check_on_level(const lvl::RationalFn& f, const lvl::LevelCurveComponent& c, double tol) {
  for (const auto& a : c.arcs)
    for (const Complex z : a.points) REQUIRE(std::abs(f.abs(z) - c.level) <= tol * std::max(1.0, c.level));
}

int enclosed(const lvl::LevelCurveComponent& c, Complex p) {
  REQUIRE(c.is_simple_closed());
  return lvl::winding_number(c.arcs[0].points, p);
}

}  // namespace

TEST_CASE("circle law for z^2") {
  const auto f = lvl::parse_function("poly:1,0,0");
  const auto seeds = lvl::find_seeds(f, 4.0, {});
  REQUIRE(!seeds.empty());
  bool radius_two = false;
  for (const Complex s : seeds) radius_two = radius_two || std::abs(std::abs(s) - 2.0) < 1e-9;
  CHECK(radius_two);
  const auto comp = lvl::trace_component(f, 4.0, 2.0);
  REQUIRE(comp.arcs.size() == 1);
  CHECK(comp.arcs[0].closed);
  CHECK(comp.arcs[0].points.front() == comp.arcs[0].points.back());
  double dev = 0.0;
  for (const Complex z : comp.arcs[0].points) dev = std::max(dev, std::abs(std::abs(z) - 2.0));
  CHECK(dev < 1e-6);
  CHECK(std::abs(comp.arcs[0].arg_change - 4.0 * M_PI) < 1e-6);
  CHECK(comp.max_segment() <= 1e-2 * 1.0001);
}

TEST_CASE("z^5 - 1 at the critical level: one vertex, five loops") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto comp = lvl::trace_component(f, 1.0, std::pow(2.0, 0.2));
  REQUIRE(comp.vertices.size() == 1);
  CHECK(std::abs(comp.vertices[0].z) < 1e-6);
  CHECK(comp.vertices[0].mult == 4);
  CHECK(comp.arcs.size() == 5);
  for (const auto& a : comp.arcs) {
    CHECK(a.start_vertex == 0);
    CHECK(a.end_vertex == 0);
  }
  check_on_level(f, comp, 1e-9);
}

TEST_CASE("z^5 - 1 away from the critical level") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto low = lvl::trace_level_set(f, 0.5);
  REQUIRE(low.size() == 5);
  for (int k = 0; k < 5; ++k) {
    const Complex root = std::polar(1.0, 2.0 * M_PI * k / 5);
    int hits = 0;
    for (const auto& c : low) hits += enclosed(c, root) != 0;
    CHECK(hits == 1);
  }
  const auto high = lvl::trace_level_set(f, 1.5);
  REQUIRE(high.size() == 1);
  for (int k = 0; k < 5; ++k) CHECK(enclosed(high[0], std::polar(1.0, 2.0 * M_PI * k / 5)) == 1);
  const auto seeds = lvl::find_seeds(f, 0.5, {});
  CHECK(seeds.size() >= 5);
}

TEST_CASE("lemniscate z^2 - 1 at level 1") {
  const auto f = lvl::parse_function("poly:1,0,-1");
  const auto comp = lvl::trace_component(f, 1.0, 1.4);
  REQUIRE(comp.vertices.size() == 1);
  CHECK(comp.vertices[0].mult == 1);
  CHECK(comp.arcs.size() == 2);
  CHECK(comp.vertices[0].slot_angles.size() == 4);
  check_on_level(f, comp, 1e-9);
  const auto all = lvl::trace_level_set(f, 1.0);
  CHECK(all.size() == 1);
}

TEST_CASE("grid oracle agrees with the traced lemniscate") {
  const auto f = lvl::parse_function("poly:1,0,-1");
  const auto comps = lvl::trace_level_set(f, 1.0);
  std::vector<Complex> traced;
  for (const auto& c : comps)
    for (const Complex z : c.sample_points()) traced.push_back(z);
  const auto raster =
      oracle::marching_squares([&](Complex z) { return f.abs(z) - 1.0; }, -2.0, -2.0, 2.0, 2.0, 200);
  const double d = oracle::hausdorff(traced, raster.crossings);
  CHECK(d <= 2.0 * raster.cell_diagonal);
}

TEST_CASE("rational function with a pole") {
  const auto f = lvl::parse_function("rat:1/1,0");  // 1/z, level curves are circles of radius 1/eps
  const auto comps = lvl::trace_level_set(f, 2.0);
  REQUIRE(comps.size() == 1);
  for (const Complex z : comps[0].sample_points()) CHECK(std::abs(std::abs(z) - 0.5) < 1e-9);
  // arg f decreases along the positively oriented circle, so the stored
  // orientation is clockwise
  CHECK(lvl::signed_area(comps[0].arcs[0].points) < 0.0);
}

TEST_CASE("Blaschke ratio on the disk") {
  const auto f = lvl::parse_function("blaschke:0.5,-0.5/");
  const auto disk = lvl::DomainSpec::unit_disk();
  lvl::Tracer tr(f, disk);
  REQUIRE(tr.critical_vertices().size() == 1);
  const auto v = tr.critical_vertices()[0];
  const auto comp = tr.trace_through_vertex(v);
  CHECK(comp.arcs.size() == 2);
  for (const Complex z : comp.sample_points()) CHECK(std::abs(z) < 1.0);
  CHECK_THROWS_AS(tr.trace_level_set(1.0), lvl::UsageError);
}

TEST_CASE("unbounded level sets are rejected") {
  const auto f = lvl::parse_function("rat:1,0/1,1");  // |f| -> 1 at infinity
  CHECK_THROWS_AS(lvl::trace_level_set(f, 1.0), lvl::NumericalError);
}
