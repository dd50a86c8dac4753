#include <cmath>
#include <random>
#include <set>

#include "brute_force.hpp"
#include "doctest.h"
#include "levelcurve/error.hpp"
#include "levelcurve/levelgraph.hpp"

using lvl::Complex;

namespace {
lvl::LevelGraph graph_at(const lvl::RationalFn& f, double eps, Complex seed) {
  return lvl::build_graph(lvl::trace_component(f, eps, seed));
}
}  // namespace

TEST_CASE("z^5 - 1 at level 1: V=1, E=5, five bounded faces") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto g = graph_at(f, 1.0, std::pow(2.0, 0.2));
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.size() == 5);
  CHECK(g.vertices[0].degree == 10);
  const auto c = lvl::face_count(g);
  CHECK(c.bounded == 5);
  CHECK(c.total == 6);
  CHECK_NOTHROW(g.check_invariants());
  std::set<int> faces;
  for (int k = 0; k < 5; ++k) {
    const int id = g.face_of_point(std::polar(1.0, 2.0 * M_PI * k / 5));
    CHECK(g.faces[static_cast<std::size_t>(id)].bounded);
    faces.insert(id);
  }
  CHECK(faces.size() == 5);
  const auto zpf = lvl::zeros_per_face(g, f);
  for (const auto& fc : g.faces)
    if (fc.bounded) CHECK(zpf.at(fc.id).size() == 1);
  CHECK(g.face_of_point(Complex(50, 50)) == g.unbounded_face());
}

TEST_CASE("simple closed curve convention") {
  const auto f = lvl::parse_function("poly:1,0,0");
  const auto g = graph_at(f, 4.0, 2.0);
  CHECK(g.vertices.empty());
  CHECK(g.edges.size() == 1);
  const auto c = lvl::face_count(g);
  CHECK(c.bounded == 1);
  CHECK(c.total == 2);
  CHECK_NOTHROW(g.check_invariants());
  const auto zpf = lvl::zeros_per_face(g, lvl::parse_function("poly:1,0,0"));
  CHECK(zpf.at(g.face_of_point(0.0)).at(0).mult == 2);
}

TEST_CASE("lemniscate: two lobes, flood-fill oracle agrees") {
  const auto f = lvl::parse_function("poly:1,0,-1");
  const auto g = graph_at(f, 1.0, 1.4);
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.size() == 2);
  const auto c = lvl::face_count(g);
  CHECK(c.bounded == 2);
  CHECK(c.total == 3);
  CHECK(g.face_of_point(1.0) != g.face_of_point(-1.0));
  const auto flood = oracle::flood_fill_regions([&](Complex z) { return f.abs(z) - 1.0; }, -2, -2, 2, 2, 400);
  CHECK(flood.negative + flood.positive == c.total);
}

TEST_CASE("face_of_point is total and consistent along curve-avoiding segments") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto g = graph_at(f, 1.0, std::pow(2.0, 0.2));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  int consistent_pairs = 0;
  Complex prev(5.0, 0.0);
  int prev_face = g.face_of_point(prev);
  for (int i = 0; i < 1000; ++i) {
    const Complex z(u(rng), u(rng));
    if (g.distance_to_curve(z) < 1e-6) continue;
    const int id = g.face_of_point(z);
    CHECK(id >= 0);
    if (!g.index().crosses(prev, z)) {
      CHECK(id == prev_face);
      ++consistent_pairs;
    }
    prev = z;
    prev_face = id;
  }
  CHECK(consistent_pairs > 50);
}

TEST_CASE("representative points lie in their faces") {
  const auto f = lvl::parse_function("poly:1,0,-1,0");
  lvl::Tracer tr(f, {});
  for (const auto& v : tr.critical_vertices()) {
    const auto g = lvl::build_graph(tr.trace_through_vertex(v));
    CHECK_NOTHROW(g.check_invariants());
    for (const auto& fc : g.faces) CHECK(g.face_of_point(fc.rep) == fc.id);
  }
}

TEST_CASE("points on the curve are rejected") {
  const auto f = lvl::parse_function("poly:1,0,0");
  const auto g = graph_at(f, 4.0, 2.0);
  CHECK_THROWS_AS(g.face_of_point(g.polylines[0][10]), lvl::UsageError);
}
