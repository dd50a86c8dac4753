#include "levelcurve/gauss_lucas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levelcurve/error.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/geometry.hpp"
#include "levelcurve/roots.hpp"
#include "levelcurve/tracer.hpp"

namespace lvl {
namespace {

double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

std::vector<Complex> expand(const std::vector<RootMult>& roots) {
  std::vector<Complex> out;
  for (const auto& r : roots)
    for (int k = 0; k < r.mult; ++k) out.push_back(r.z);
  return out;
}

// p(center + alpha * t) as a polynomial in t.
Polynomial compose_affine(const Polynomial& p, Complex center, Complex alpha) {
  const Polynomial shifted = p.taylor_shift(center);
  std::vector<Complex> c(shifted.coeffs().begin(), shifted.coeffs().end());
  Complex a(1.0, 0.0);
  for (auto& x : c) {
    x *= a;
    a *= alpha;
  }
  return Polynomial(std::move(c));
}

}  // namespace

std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Complex> h(2 * pts.size());
  std::size_t k = 0;
  for (const Complex p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double hull_signed_distance(const std::vector<Complex>& hull, Complex q) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return std::abs(q - hull[0]);
  if (hull.size() == 2) {
    // A segment hull: points on it (up to rounding) get the negative depth
    // into the segment's relative interior.
    const Complex a = hull[0], b = hull[1];
    const double d = point_segment_distance(q, a, b);
    const double len = std::abs(b - a);
    if (d > 64.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)})) return d;
    const double t = ((q - a) / (b - a)).real();
    return t <= 0.0 || t >= 1.0 ? d : -std::min(t, 1.0 - t) * len;
  }
  double dmin = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Complex a = hull[i], b = hull[(i + 1) % hull.size()];
    dmin = std::min(dmin, point_segment_distance(q, a, b));
    if (cross(a, b, q) < 0.0) inside = false;
  }
  return inside ? -dmin : dmin;
}

HullReport gauss_lucas_report(const Polynomial& p, const Tolerances& tol) {
  if (p.degree() < 2) throw UsageError("Gauss-Lucas check needs degree >= 2");
  RootOptions ro;
  ro.cluster_tol = tol.cluster_tol;
  HullReport r;
  r.zeros = expand(find_roots(p, ro));
  r.critical_points = expand(find_roots(p.derivative(), ro));
  r.hull = convex_hull(r.zeros);
  for (const Complex z : r.zeros) r.scale = std::max(r.scale, std::abs(z));
  r.max_signed_distance = -std::numeric_limits<double>::infinity();
  for (const Complex c : r.critical_points) r.max_signed_distance = std::max(r.max_signed_distance, hull_signed_distance(r.hull, c));
  r.holds = r.max_signed_distance <= tol.hull_tol * r.scale;
  return r;
}

HullReport check_gauss_lucas(const Polynomial& p, const Tolerances& tol) {
  HullReport r = gauss_lucas_report(p, tol);
  if (!r.holds) {
    std::ostringstream os;
    os << "critical point outside the convex hull of the zeros: signed distance " << r.max_signed_distance
       << " exceeds " << tol.hull_tol * r.scale;
    throw CertificateError(os.str());
  }
  return r;
}

ReplayReport replay_level_curve_argument(const Polynomial& p, Complex c,
                                         const std::optional<std::vector<Complex>>& declared_zeros,
                                         const Tolerances& tol) {
  ReplayReport rep;
  if (p.degree() < 2) throw UsageError("replay needs degree >= 2");
  const std::vector<Complex> zeros = declared_zeros ? *declared_zeros : expand(find_roots(p));
  if (zeros.empty()) throw UsageError("replay needs at least one declared zero");
  const std::vector<Complex> hull = convex_hull(zeros);
  double scale = 1.0;
  for (const Complex z : zeros) scale = std::max(scale, std::abs(z));
  const double dist = hull_signed_distance(hull, c);
  if (dist <= tol.hull_tol * scale) {
    rep.reason = "not applicable: the critical point lies in the convex hull of the zeros";
    return rep;
  }

  // Translate the hull centroid to 0 and shrink by the largest zero modulus
  // plus a margin.
  Complex g(0.0, 0.0);
  for (const Complex h : hull) g += h;
  g /= static_cast<double>(hull.size());
  double maxmod = 0.0;
  for (const Complex z : zeros) maxmod = std::max(maxmod, std::abs(z - g));
  Complex center = g;
  double radius = maxmod + 0.05;
  if (std::abs(c - center) <= radius) {
    // c is outside the hull but inside that disk: use a larger disk whose
    // boundary passes between the hull and c.
    Complex foot = hull[0];
    double best = std::abs(c - foot);
    for (std::size_t i = 0; i < hull.size(); ++i) {
      Complex q;
      const double d = point_segment_distance(c, hull[i], hull[(i + 1) % hull.size()], &q);
      if (d < best) {
        best = d;
        foot = q;
      }
    }
    const Complex n = (c - foot) / best;
    const Complex mid = foot + 0.5 * best * n;
    double R = 0.0;
    for (const Complex w : zeros) {
      const Complex local = (w - mid) / n;  // x along n, y across
      const double x = local.real(), y = local.imag();
      R = std::max(R, (x * x + y * y) / (-2.0 * x));
    }
    R *= 1.05;
    center = mid - R * n;
    radius = R;
  }
  const Complex rotation = std::polar(1.0, -std::arg(c - center));
  auto normalize = [&](Complex z) { return (z - center) * rotation / radius; };
  rep.center = center;
  rep.radius = radius;
  rep.rotation = rotation;
  rep.critical_normalized = normalize(c);
  std::vector<Complex> w;
  for (const Complex z : zeros) w.push_back(normalize(z));
  for (const Complex z : w)
    if (!(std::abs(z) < 1.0)) throw NumericalError("normalization failed to place the zeros in the unit disk");
  if (!(rep.critical_normalized.real() > 1.0)) throw NumericalError("normalization failed to move c past 1");

  // Trace the level curve of the normalized polynomial through c.
  const Polynomial pn = compose_affine(p, center, radius / rotation);
  const RationalFn fn = RationalFn::polynomial(pn);
  const Tracer tracer(fn, DomainSpec::plane(), tol);
  const CurveVertex* vertex = nullptr;
  for (const auto& v : tracer.critical_vertices())
    if (vertex == nullptr || std::abs(v.z - rep.critical_normalized) < std::abs(vertex->z - rep.critical_normalized))
      vertex = &v;
  if (vertex == nullptr || std::abs(vertex->z - rep.critical_normalized) > 1e-6 * radius) {
    throw UsageError("the given point is not a critical point of p");
  }
  const LevelCurveComponent comp = tracer.trace_through_vertex(*vertex);
  rep.level = comp.level;

  // Look for a horizontal line meeting the curve twice to the right of 1.
  const double cr = rep.critical_normalized.real();
  const double base = std::min(0.05, 0.25 * (cr - 1.0));
  for (const double mult : {1.0, 0.5, 2.0, 0.25, 4.0, 0.1}) {
    for (const double sign : {1.0, -1.0}) {
      const double s = sign * base * mult;
      std::vector<double> xs;
      for (const auto& a : comp.arcs)
        for (std::size_t i = 1; i < a.points.size(); ++i) {
          const Complex p0 = a.points[i - 1], p1 = a.points[i];
          if ((p0.imag() - s) * (p1.imag() - s) > 0.0 || p0.imag() == p1.imag()) continue;
          const double t = (s - p0.imag()) / (p1.imag() - p0.imag());
          const double x = p0.real() + t * (p1.real() - p0.real());
          if (x > 1.0) xs.push_back(x);
        }
      std::sort(xs.begin(), xs.end());
      if (xs.size() < 2 || xs.back() - xs.front() <= 1e-9) continue;
      // Refine both crossings exactly on the level along the line Im z = s.
      auto refine = [&](double x) {
        Complex z(x, s);
        const double le = std::log(comp.level);
        for (int it = 0; it < 50; ++it) {
          const double u = fn.log_abs(z) - le;
          const Complex wd = fn.log_derivative(z);
          const double du = wd.real();  // d/dx log|f| = Re(f'/f)
          if (du == 0.0) break;
          const double dx = -u / du;
          z += dx;
          if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        return z;
      };
      const Complex z1 = refine(xs.front());
      const Complex z2 = refine(xs.back());
      if (!(z1.real() > 1.0 && z2.real() > z1.real() + 1e-9)) continue;
      rep.s = s;
      rep.z1 = z1;
      rep.z2 = z2;
      rep.product1 = 1.0;
      rep.product2 = 1.0;
      for (const Complex wi : w) {
        rep.product1 *= std::abs(z1 - wi);
        rep.product2 *= std::abs(z2 - wi);
      }
      rep.inequality_holds = rep.product1 < rep.product2;
      rep.applicable = true;
      rep.reason = "two points of the critical level curve share Im z = s to the right of 1";
      return rep;
    }
  }
  throw NumericalError("no horizontal line meets the traced level curve twice to the right of 1");
}

CorruptedInstance corrupted_instance(const std::vector<Complex>& zeros_in_disk) {
  for (const Complex z : zeros_in_disk)
    if (!(std::abs(z) < 1.0)) throw UsageError("corrupted instance zeros must lie inside the unit disk");
  const Polynomial p = Polynomial::from_roots(zeros_in_disk);
  Complex v, d;
  p.eval_with_derivative(Complex(2.0, 0.0), v, d);
  const Complex r = Complex(2.0, 0.0) + v / d;  // q'(2) = p'(2)(2 - r) + p(2) = 0
  CorruptedInstance inst;
  inst.q = p * Polynomial({-r, Complex(1.0, 0.0)});
  inst.declared_zeros = zeros_in_disk;
  return inst;
}

}  // namespace lvl
