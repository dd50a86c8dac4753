#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "doctest.h"
#include "levelcurve/error.hpp"
#include "levelcurve/kernels.hpp"
#include "levelcurve/metrics.hpp"

using lvl::Complex;
using lvl::HausdorffMethod;

namespace {
std::vector<Complex> circle(double r, int n, double phase = 0.0) {
  std::vector<Complex> pts;
  for (int k = 0; k < n; ++k) pts.push_back(std::polar(r, phase + 2.0 * M_PI * k / n));
  return pts;
}

std::vector<Complex> cloud(std::mt19937_64& rng, int n, double spread) {
  std::normal_distribution<double> g(0.0, spread);
  std::vector<Complex> pts;
  for (int k = 0; k < n; ++k) pts.emplace_back(g(rng), g(rng));
  return pts;
}
}  // namespace

TEST_CASE("identity and empty sets") {
  const auto x = circle(1.0, 50);
  CHECK(lvl::hausdorff(x, x).d_check == 0.0);
  const std::vector<Complex> none;
  const std::vector<Complex> origin = {Complex(0, 0)};
  const auto r = lvl::hausdorff(none, origin);
  CHECK(std::isinf(r.d_check));
  CHECK(std::isinf(r.d1));
  CHECK(std::isinf(r.d2));
  CHECK(std::isinf(lvl::hausdorff(none, none).d_check));
}

TEST_CASE("concentric circles") {
  const auto a = circle(1.0, 1000);
  const auto b = circle(1.1, 1000, 0.37);
  const auto r = lvl::hausdorff(a, b);
  CHECK(r.d_check >= 0.1 - 1e-12);
  CHECK(r.d_check <= 0.1 + 2.0 * M_PI / 1000);
  CHECK(r.d_check == doctest::Approx(oracle::hausdorff(a, b)).epsilon(1e-12));
}

TEST_CASE("all methods agree bit for bit with the double loop") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto x = cloud(rng, 50 + t * 13, 1.0 + t % 3);
    auto y = cloud(rng, 80 + t * 7, 0.5);
    if (t % 5 == 0) y.push_back(Complex(30.0, -40.0));  // sparse grids with far outliers
    const double ref = oracle::hausdorff(x, y);
    const auto brute = lvl::hausdorff(x, y, HausdorffMethod::Brute);
    const auto scalar = lvl::hausdorff(x, y, HausdorffMethod::BruteScalar);
    const auto grid = lvl::hausdorff(x, y, HausdorffMethod::Grid);
    CHECK(brute.d_check == scalar.d_check);
    CHECK(grid.d_check == scalar.d_check);
    CHECK(grid.d1 == scalar.d1);
    CHECK(grid.d2 == scalar.d2);
    CHECK(std::abs(scalar.d_check - ref) <= 1e-12 * std::max(1.0, ref));
  }
}

TEST_CASE("pseudometric laws on random triples") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const auto x = cloud(rng, 30, 1.0), y = cloud(rng, 40, 1.5), z = cloud(rng, 25, 0.7);
    const double xy = lvl::hausdorff(x, y).d_check, yx = lvl::hausdorff(y, x).d_check;
    const double yz = lvl::hausdorff(y, z).d_check, xz = lvl::hausdorff(x, z).d_check;
    CHECK(xy == yx);
    CHECK(xz <= xy + yz + 1e-12);
  }
}

TEST_CASE("refining the sampling moves the distance by at most one step") {
  for (const int n : {100, 400}) {
    const auto a = circle(1.0, n), b = circle(1.3, n, 0.1);
    const auto a2 = circle(1.0, 2 * n), b2 = circle(1.3, 2 * n, 0.1);
    const double step = 2.0 * M_PI * 1.3 / n;
    CHECK(lvl::hausdorff(a2, b2).d_check <= lvl::hausdorff(a, b).d_check + step);
  }
}

TEST_CASE("continuity probe: z^2 at level 1") {
  const auto f = lvl::parse_function("poly:1,0,0");
  const auto comp = lvl::trace_component(f, 1.0, Complex(1.0, 0.0));
  const auto cert = lvl::continuity_probe(f, 1.0, 0.05, lvl::DomainSpec::plane(), comp);
  CHECK(cert.pass);
  CHECK(cert.eta >= 0.05);
  REQUIRE(cert.samples.size() == 16);
  for (const auto& s : cert.samples) {
    CHECK(s.d_check < 0.05);
    CHECK(s.curves == 1);
    // Closed form: the level curve at zeta is the circle of radius sqrt(zeta).
    CHECK(std::abs(s.d_check - std::abs(std::sqrt(s.zeta) - 1.0)) <= cert.discretization + 1e-9);
  }
  // The analytic boundary is 1 - sqrt(1 - eta) = 0.05, eta = 0.0975.
  CHECK(cert.eta <= 0.0975 + 1e-9);
}

TEST_CASE("continuity probe: z^5 - 1 at the critical level") {
  const auto f = lvl::parse_function("poly:1,0,0,0,0,-1");
  const auto comp = lvl::trace_component(f, 1.0, Complex(std::pow(2.0, 0.2), 0.0));
  lvl::ContinuityOptions opts;
  opts.threads = 4;
  const auto cert = lvl::continuity_probe(f, 1.0, 0.1, lvl::DomainSpec::plane(), comp, {}, opts);
  CHECK(cert.pass);
  CHECK(cert.eta > 0.0);
  REQUIRE(cert.samples.size() == 16);
  for (const auto& s : cert.samples) {
    CHECK(s.d_check < 0.1);
    CHECK(s.curves == (s.zeta < 1.0 ? 5 : 1));
  }
}

TEST_CASE("continuity probe: a huge delta passes at the first trial") {
  const auto f = lvl::parse_function("poly:1,0,0");
  const auto comp = lvl::trace_component(f, 1.0, Complex(1.0, 0.0));
  const auto cert = lvl::continuity_probe(f, 1.0, 40.0, lvl::DomainSpec::plane(), comp);
  CHECK(cert.pass);
  CHECK(cert.eta == 0.5);
  CHECK(cert.trials == 1);
  CHECK_THROWS_AS(lvl::continuity_probe(f, 1.0, 0.0, lvl::DomainSpec::plane(), comp), lvl::UsageError);
}
