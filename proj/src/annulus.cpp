#include "levelcurve/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include "levelcurve/error.hpp"
#include "levelcurve/parallel.hpp"

namespace lvl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * M_PI;

// Inside flags of a closed ring on the grid points (x0 + i h, y0 + j h), by
// crossing parity along each row.
std::vector<char> ring_parity(const Polyline& ring, double x0, double y0, double h, int nx, int ny) {
  std::vector<std::vector<double>> xs(static_cast<std::size_t>(ny));
  const std::size_t n = ring.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = ring[k], b = ring[(k + 1) % n];
    const double lo = std::min(a.imag(), b.imag()), hi = std::max(a.imag(), b.imag());
    const int j0 = std::max(0, static_cast<int>(std::ceil((lo - y0) / h)) - 1);
    const int j1 = std::min(ny - 1, static_cast<int>(std::floor((hi - y0) / h)) + 1);
    for (int j = j0; j <= j1; ++j) {
      const double y = y0 + j * h;
      if ((a.imag() <= y) == (b.imag() <= y)) continue;
      const double t = (y - a.imag()) / (b.imag() - a.imag());
      xs[static_cast<std::size_t>(j)].push_back(a.real() + t * (b.real() - a.real()));
    }
  }
  std::vector<char> inside(static_cast<std::size_t>(nx) * ny, 0);
  for (int j = 0; j < ny; ++j) {
    auto& row = xs[static_cast<std::size_t>(j)];
    std::sort(row.begin(), row.end());
    for (int i = 0; i < nx; ++i) {
      const double x = x0 + i * h;
      const auto left = std::lower_bound(row.begin(), row.end(), x) - row.begin();
      inside[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)] = left % 2 == 1;
    }
  }
  return inside;
}

// The closed ring bounding the region from outside.
const Polyline& outer_ring(const AnnularRegion& r) {
  const CurveRef& o = *r.outer;
  if (o.kind == CurveRef::Kind::BoundaryComponent) return o.ring;
  if (r.outer_member >= 0) return o.graph->faces[static_cast<std::size_t>(r.outer_face)].ring;
  return o.component.arcs.front().points;
}

double band_lo(const AnnularRegion& r) { return std::min(r.eps1, r.eps2); }
double band_hi(const AnnularRegion& r) { return std::max(r.eps1, r.eps2); }

bool in_band(const AnnularRegion& r, double v) { return v > band_lo(r) && v < band_hi(r); }

RegionMesh build_mesh(const RationalFn& f, const AnnularRegion& r, int n) {
  const Polyline& ring = outer_ring(r);
  const Box box = bounding_box(ring);
  RegionMesh m;
  m.h = std::max(box.x1 - box.x0, box.y1 - box.y0) / n;
  m.x0 = box.x0;
  m.y0 = box.y0;
  m.nx = static_cast<int>(std::ceil((box.x1 - box.x0) / m.h)) + 1;
  m.ny = static_cast<int>(std::ceil((box.y1 - box.y0) / m.h)) + 1;
  const std::vector<char> in_outer = ring_parity(ring, m.x0, m.y0, m.h, m.nx, m.ny);
  std::vector<char> in_inner(in_outer.size(), 0);
  const CurveRef& inner = *r.inner;
  if (inner.kind == CurveRef::Kind::LevelCurve) {
    const auto& g = *inner.graph;
    in_inner = ring_parity(g.faces[static_cast<std::size_t>(g.unbounded_face())].ring, m.x0, m.y0, m.h, m.nx, m.ny);
  } else if (inner.kind == CurveRef::Kind::BoundaryComponent) {
    in_inner = ring_parity(inner.ring, m.x0, m.y0, m.h, m.nx, m.ny);
  } else {
    m.inner_clearance = (1.5 * inner.mult + 0.5) * m.h;
  }
  m.node_of_cell.assign(in_outer.size(), -1);
  for (int j = 0; j < m.ny; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * m.nx + static_cast<std::size_t>(i);
      if (!in_outer[c] || in_inner[c]) continue;
      const Complex w(m.x0 + i * m.h, m.y0 + j * m.h);
      if (r.outer->distance_to(w, m.h) < 0.5 * m.h) continue;
      if (inner.kind == CurveRef::Kind::Point ? std::abs(w - inner.point) < m.inner_clearance
                                              : inner.distance_to(w, m.h) < 0.5 * m.h)
        continue;
      const FnValue v = f.eval(w);
      if (v.infinite || !std::isfinite(std::abs(v.value))) continue;
      if (!in_band(r, std::abs(v.value))) {
        // A point this close to a boundary can sit across the true curve
        // while clearing its polyline.
        if (r.outer->distance_to(w, 4.0 * m.h) < 2.0 * m.h ||
            (inner.kind != CurveRef::Kind::Point && inner.distance_to(w, 4.0 * m.h) < 2.0 * m.h))
          continue;
        std::ostringstream os;
        os << "mesh point (" << w.real() << ", " << w.imag() << ") of region " << r.id << " has |f| = "
           << std::abs(v.value) << " outside (" << band_lo(r) << ", " << band_hi(r) << ")";
        throw CertificateError(os.str());
      }
      m.node_of_cell[c] = static_cast<int>(m.w.size());
      m.w.push_back(w);
      m.fw.push_back(v.value);
    }
  m.nbr.assign(m.w.size(), {-1, -1, -1, -1});
  for (int j = 0; j < m.ny; ++j)
    for (int i = 0; i < m.nx; ++i) {
      const int a = m.node_of_cell[static_cast<std::size_t>(j) * m.nx + static_cast<std::size_t>(i)];
      if (a < 0) continue;
      const int di[4] = {1, 0, -1, 0}, dj[4] = {0, 1, 0, -1};
      for (int k = 0; k < 4; ++k) {
        const int ii = i + di[k], jj = j + dj[k];
        if (ii < 0 || jj < 0 || ii >= m.nx || jj >= m.ny) continue;
        m.nbr[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] =
            m.node_of_cell[static_cast<std::size_t>(jj) * m.nx + static_cast<std::size_t>(ii)];
      }
    }
  if (m.w.empty()) throw NumericalError("region " + std::to_string(r.id) + " has no mesh points at this resolution");
  return m;
}

double arg_step(Complex from, Complex to) { return std::arg(to / from); }

bool stays_in_band(const RationalFn& f, const AnnularRegion& r, Complex a, Complex b, double step) {
  const int k = std::max(2, static_cast<int>(std::ceil(std::abs(b - a) / step)));
  for (int i = 1; i < k; ++i) {
    const FnValue v = f.eval(a + (static_cast<double>(i) / k) * (b - a));
    if (v.infinite || !in_band(r, std::abs(v.value))) return false;
  }
  return true;
}

// Grid count along the region box that puts several cells across the
// narrowest part of the band, estimated from the mid-level curve.
int band_grid(const AnnularRegion& r, int n) {
  if (r.mid_curve.empty() || r.inner->kind == CurveRef::Kind::Point) return n;
  double half = kInf;
  for (const Complex z : r.mid_curve)
    half = std::min({half, r.inner->distance_to(z, half), r.outer->distance_to(z, half)});
  const Box box = bounding_box(outer_ring(r));
  const double side = std::max(box.x1 - box.x0, box.y1 - box.y0);
  const double want = side / (half / 2.5);
  // Keep the cell table near 8M entries.
  const double cap = std::sqrt(8.0e6 * side * side / std::max((box.x1 - box.x0) * (box.y1 - box.y0), 1e-300));
  return static_cast<int>(std::max<double>(n, std::min(std::ceil(want), cap)));
}

// Increment of arg f along the straight segment from a (where f = fa) to b,
// in steps that turn arg f by at most pi/8.
double continued_arg(const RationalFn& f, Complex a, Complex fa, Complex b, Complex* fb = nullptr) {
  double alpha = 0.0;
  double t = 0.0, dt = 0.125;
  Complex fc = fa;
  while (t < 1.0) {
    const double tn = std::min(1.0, t + dt);
    const FnValue v = f.eval(a + tn * (b - a));
    if (v.infinite || v.value == Complex(0.0, 0.0)) {
      if (fb != nullptr) *fb = v.infinite ? Complex(kInf, 0.0) : Complex(0.0, 0.0);
      return alpha;
    }
    const double inc = arg_step(fc, v.value);
    if (std::abs(inc) > M_PI / 8.0 && dt > 1e-14) {
      dt *= 0.5;
      continue;
    }
    alpha += inc;
    fc = v.value;
    t = tn;
    dt = std::min(1.0, dt * 1.5);
  }
  if (fb != nullptr) *fb = fc;
  return alpha;
}

// Seed on |f| = eps inside the region, from a mesh edge whose ends straddle eps.
std::vector<Complex> band_seeds(const RationalFn& f, const RegionMesh& m, double eps, std::size_t limit) {
  std::vector<Complex> seeds;
  const double le = std::log(eps);
  for (std::size_t a = 0; a < m.w.size() && seeds.size() < limit; ++a)
    for (int k = 0; k < 2; ++k) {
      const int b = m.nbr[a][static_cast<std::size_t>(k)];
      if (b < 0) continue;
      double sa = std::log(std::abs(m.fw[a])) - le;
      const double sb = std::log(std::abs(m.fw[static_cast<std::size_t>(b)])) - le;
      if ((sa < 0.0) == (sb < 0.0)) continue;
      Complex lo = m.w[a], hi = m.w[static_cast<std::size_t>(b)];
      for (int it = 0; it < 60; ++it) {
        const Complex mid = 0.5 * (lo + hi);
        const double sm = f.log_abs(mid) - le;
        if ((sm < 0.0) == (sa < 0.0)) {
          lo = mid;
          sa = sm;
        } else {
          hi = mid;
        }
      }
      seeds.push_back(0.5 * (lo + hi));
      if (seeds.size() >= limit) break;
    }
  return seeds;
}

std::vector<Complex> spread(const Polyline& pts, int count) {
  if (static_cast<int>(pts.size()) <= count) return pts;
  std::vector<Complex> out;
  for (int k = 0; k < count; ++k)
    out.push_back(pts[(2 * static_cast<std::size_t>(k) + 1) * pts.size() / (2 * static_cast<std::size_t>(count))]);
  return out;
}

Polyline unit_circle(int n) {
  Polyline ring;
  for (int k = 0; k < n; ++k) ring.push_back(std::polar(1.0, kTwoPi * k / n));
  return ring;
}

}  // namespace

int RegionMesh::nearest_node(Complex z) const {
  const int ci = static_cast<int>(std::lround((z.real() - x0) / h));
  const int cj = static_cast<int>(std::lround((z.imag() - y0) / h));
  int best = -1;
  double bd = kInf;
  for (int r = 0; r <= std::max(nx, ny); ++r) {
    for (int j = cj - r; j <= cj + r; ++j)
      for (int i = ci - r; i <= ci + r; ++i) {
        if (std::max(std::abs(i - ci), std::abs(j - cj)) != r) continue;
        if (i < 0 || j < 0 || i >= nx || j >= ny) continue;
        const int n = node_of_cell[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)];
        if (n < 0) continue;
        const double d = std::abs(w[static_cast<std::size_t>(n)] - z);
        if (d < bd) {
          bd = d;
          best = n;
        }
      }
    if (best >= 0 && bd < (r - 1) * h) break;
  }
  return best;
}

bool AnnularRegion::contains(Complex w) const {
  const CurveRef& o = *outer;
  if (o.kind == CurveRef::Kind::BoundaryComponent) {
    if (winding_number(o.ring, w) == 0) return false;
  } else {
    if (!(o.distance_to(w, 2.0 * o.graph->margin()) > o.graph->margin())) return false;
    const int face = o.face_of(w);
    if (outer_member >= 0 ? face != outer_face : !o.face_is_bounded(face)) return false;
  }
  const CurveRef& in = *inner;
  switch (in.kind) {
    case CurveRef::Kind::Point:
      return w != in.point;
    case CurveRef::Kind::BoundaryComponent:
      return winding_number(in.ring, w) == 0;
    default:
      return in.distance_to(w, 2.0 * in.graph->margin()) > in.graph->margin() && !in.face_is_bounded(in.face_of(w));
  }
}

int winding_N(const RationalFn& f, AnnularRegion& r, const DomainSpec& domain, const Tolerances& tol) {
  if (r.mesh.w.empty()) throw UsageError("winding_N needs the region mesh");
  std::vector<double> levels;
  if (r.eps1 == 0.0) {
    levels = {0.25 * r.eps2, 0.5 * r.eps2, 0.75 * r.eps2};
  } else if (std::isinf(r.eps1)) {
    levels = {4.0 / 3.0 * r.eps2, 2.0 * r.eps2, 4.0 * r.eps2};
  } else {
    for (const double s : {0.25, 0.5, 0.75}) levels.push_back(std::exp((1.0 - s) * std::log(r.eps1) + s * std::log(r.eps2)));
  }
  const Tracer tracer(f, domain, tol);
  r.winding_levels = levels;
  r.winding_turns.clear();
  int N = 0, M = 0;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    const double eps = levels[li];
    bool done = false;
    // Mesh edges can miss a band narrower than the grid step; points of the
    // bounding curves pushed onto the level cover that case.
    std::vector<Complex> seeds = band_seeds(f, r.mesh, eps, 12);
    for (const CurveRef* c : {r.outer.get(), r.inner.get()}) {
      if (c->kind == CurveRef::Kind::Point) continue;
      for (Complex z : c->samples(16))
        if (tracer.correct(z, eps)) seeds.push_back(z);
    }
    for (const Complex seed : seeds) {
      LevelCurveComponent comp;
      try {
        comp = tracer.trace_component(eps, seed);
      } catch (const Error&) {
        continue;
      }
      if (!comp.vertices.empty() || comp.arcs.size() != 1) continue;
      bool inside = true;
      for (const Complex z : spread(comp.arcs[0].points, 16)) inside = inside && r.contains(z);
      if (!inside) continue;
      const double turns = comp.total_arg_change() / kTwoPi;
      if (std::abs(turns - std::round(turns)) > 1e-6) {
        std::ostringstream os;
        os << "arg f changes by " << turns << " turns along a level curve of region " << r.id;
        throw CertificateError(os.str());
      }
      const int n = static_cast<int>(std::lround(turns));
      const Polyline& ring = comp.arcs[0].points;
      const int m = signed_area(ring) > 0.0 ? n : -n;
      if (li == 0) {
        N = n;
        M = m;
      } else if (n != N || m != M) {
        throw CertificateError("winding number of region " + std::to_string(r.id) + " depends on the level curve");
      }
      r.winding_turns.push_back(turns);
      if (li == 1) {
        r.mid_level = eps;
        r.mid_curve = ring;
        r.enclosed_zeros = r.enclosed_poles = 0;
        for (const auto& z : f.zeros())
          if (winding_number(ring, z.z) != 0) r.enclosed_zeros += z.mult;
        for (const auto& p : f.poles())
          if (winding_number(ring, p.z) != 0) r.enclosed_poles += p.mult;
      }
      done = true;
      break;
    }
    if (!done) {
      std::ostringstream os;
      os << "no level curve at " << eps << " found inside region " << r.id;
      throw NumericalError(os.str());
    }
  }
  if (N < 1) throw CertificateError("region " + std::to_string(r.id) + " has winding number " + std::to_string(N));
  if (r.enclosed_zeros - r.enclosed_poles != M) {
    std::ostringstream os;
    os << "argument principle fails in region " << r.id << ": zeros - poles = " << r.enclosed_zeros - r.enclosed_poles
       << " but M = " << M;
    throw CertificateError(os.str());
  }
  r.N = N;
  r.M = M;
  return N;
}

bool build_phi(const RationalFn& f, AnnularRegion& r) {
  if (r.N < 1) throw UsageError("build_phi needs the winding number");
  const RegionMesh& m = r.mesh;
  PhiGrid g;
  const double N = r.N;

  // Points of the mid-level curve where f is real and positive.
  std::vector<Complex> positives;
  const Polyline& c = r.mid_curve;
  for (std::size_t k = 0; k < c.size(); ++k) {
    Complex a = c[k], b = c[(k + 1) % c.size()];
    Complex fa = f.eval(a).value;
    const Complex fb = f.eval(b).value;
    if ((fa.imag() < 0.0) == (fb.imag() < 0.0) || fa.real() <= 0.0 || fb.real() <= 0.0) continue;
    for (int it = 0; it < 60; ++it) {
      const Complex mid = 0.5 * (a + b);
      const Complex fm = f.eval(mid).value;
      if ((fm.imag() < 0.0) == (fa.imag() < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    // Newton on f(z) = mid_level lands on the curve with f real and positive.
    Complex z = 0.5 * (a + b);
    for (int it = 0; it < 20; ++it) {
      const FnValue fz = f.eval(z), dz = f.eval_derivative(z);
      if (fz.infinite || dz.infinite || dz.value == Complex(0.0, 0.0)) break;
      const Complex step = (fz.value - r.mid_level) / dz.value;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    positives.push_back(z);
  }
  if (positives.empty()) throw NumericalError("no point with f > 0 on the mid-level curve of region " + std::to_string(r.id));
  double best_arg = kInf;
  for (const Complex z : positives) {
    const int node = m.nearest_node(z);
    const std::size_t nu = static_cast<std::size_t>(node);
    const double a = std::abs(std::arg(m.fw[nu]));
    const auto key = [&](int n, double arg) {
      const Complex w = m.w[static_cast<std::size_t>(n)];
      return std::make_tuple(arg, std::abs(w), -w.real(), -w.imag());
    };
    if (g.root < 0 || key(node, a) < key(g.root, best_arg)) {
      g.root = node;
      g.z0 = z;
      best_arg = a;
    }
  }

  const std::size_t n = m.w.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // Spanning-tree propagation over the mesh graph. When the graph is split
  // (a neck of the region narrower than the grid step), the unreached node
  // closest to a reached one is joined by continuing arg f along the straight
  // segment between them.
  int bridges = 0;
  auto propagate = [&](bool breadth_first) {
    std::vector<double> alpha(n, nan);
    std::vector<int> order;
    order.push_back(g.root);
    alpha[static_cast<std::size_t>(g.root)] = std::arg(m.fw[static_cast<std::size_t>(g.root)]);
    bridges = 0;
    for (;;) {
      std::size_t head = 0;
      while (breadth_first ? head < order.size() : !order.empty()) {
        int a;
        if (breadth_first) {
          a = order[head++];
        } else {
          a = order.back();
          order.pop_back();
        }
        const std::size_t au = static_cast<std::size_t>(a);
        for (int k = 0; k < 4; ++k) {
          const int b = m.nbr[au][static_cast<std::size_t>(breadth_first ? k : 3 - k)];
          if (b < 0 || !std::isnan(alpha[static_cast<std::size_t>(b)])) continue;
          alpha[static_cast<std::size_t>(b)] = alpha[au] + arg_step(m.fw[au], m.fw[static_cast<std::size_t>(b)]);
          order.push_back(b);
        }
      }
      order.clear();
      constexpr int kReach = 8;
      double best = kInf;
      int bu = -1, bv = -1;
      for (std::size_t u = 0; u < n; ++u) {
        if (!std::isnan(alpha[u])) continue;
        const int ci = static_cast<int>(std::lround((m.w[u].real() - m.x0) / m.h));
        const int cj = static_cast<int>(std::lround((m.w[u].imag() - m.y0) / m.h));
        for (int j = std::max(0, cj - kReach); j <= std::min(m.ny - 1, cj + kReach); ++j)
          for (int i = std::max(0, ci - kReach); i <= std::min(m.nx - 1, ci + kReach); ++i) {
            const int v = m.node_of_cell[static_cast<std::size_t>(j) * m.nx + static_cast<std::size_t>(i)];
            if (v < 0 || std::isnan(alpha[static_cast<std::size_t>(v)])) continue;
            const double d = std::abs(m.w[u] - m.w[static_cast<std::size_t>(v)]);
            if (d < best && stays_in_band(f, r, m.w[u], m.w[static_cast<std::size_t>(v)], 0.25 * m.h)) {
              best = d;
              bu = static_cast<int>(u);
              bv = v;
            }
          }
      }
      if (bu < 0) break;
      const std::size_t uu = static_cast<std::size_t>(bu), vu = static_cast<std::size_t>(bv);
      alpha[uu] = alpha[vu] + continued_arg(f, m.w[vu], m.fw[vu], m.w[uu]);
      order.push_back(bu);
      ++bridges;
    }
    return alpha;
  };
  g.alpha = propagate(true);
  g.alpha_dfs = propagate(false);
  g.bridges = bridges;

  for (std::size_t a = 0; a < n; ++a) {
    if (std::isnan(g.alpha[a])) {
      ++g.unreached;
      continue;
    }
    for (const int b : m.nbr[a])
      if (b >= 0) g.max_edge_increment = std::max(g.max_edge_increment, std::abs(arg_step(m.fw[a], m.fw[static_cast<std::size_t>(b)])));
    const double d = g.alpha[a] - g.alpha_dfs[a];
    const double k = std::round(d / (kTwoPi * N));
    g.max_path_discrepancy = std::max(g.max_path_discrepancy, std::abs(d - k * kTwoPi * N));
    if (k != 0.0) ++g.loops_detected;
  }
  g.phi.assign(n, Complex(nan, nan));
  for (std::size_t a = 0; a < n; ++a)
    if (!std::isnan(g.alpha[a])) g.phi[a] = std::polar(std::pow(std::abs(m.fw[a]), 1.0 / N), g.alpha[a] / N);
  r.phi = std::move(g);
  const bool too_coarse = r.phi.max_edge_increment >= M_PI / 4.0;
  const bool split = r.phi.unreached * 20 > static_cast<int>(n);
  return !too_coarse && !split;
}

Complex phi_at(const RationalFn& f, const AnnularRegion& r, Complex z) {
  const RegionMesh& m = r.mesh;
  int node = m.nearest_node(z);
  if (node < 0 || std::isnan(r.phi.alpha[static_cast<std::size_t>(node)])) {
    double bd = kInf;
    for (std::size_t a = 0; a < m.w.size(); ++a)
      if (!std::isnan(r.phi.alpha[a]) && std::abs(m.w[a] - z) < bd) {
        bd = std::abs(m.w[a] - z);
        node = static_cast<int>(a);
      }
  }
  const std::size_t nu = static_cast<std::size_t>(node);
  Complex fz;
  const double alpha = r.phi.alpha[nu] + continued_arg(f, m.w[nu], m.fw[nu], z, &fz);
  if (std::isinf(fz.real())) return {kInf, kInf};
  if (fz == Complex(0.0, 0.0)) return {0.0, 0.0};
  return std::polar(std::pow(std::abs(fz), 1.0 / r.N), alpha / r.N);
}

PhiCertificate verify_phi(const RationalFn& f, const AnnularRegion& r, const Tolerances& tol,
                          const AnnulusOptions& opts, bool strict) {
  PhiCertificate c;
  const RegionMesh& m = r.mesh;
  const PhiGrid& g = r.phi;
  const int N = r.N;
  double max_f = 0.0;
  std::vector<std::size_t> live;
  for (std::size_t a = 0; a < m.w.size(); ++a)
    if (!std::isnan(g.alpha[a])) live.push_back(a);
  if (live.empty()) throw NumericalError("region " + std::to_string(r.id) + " has an empty phi grid");

  c.min_abs_phi = kInf;
  for (const std::size_t a : live) {
    Complex p(1.0, 0.0);
    for (int k = 0; k < N; ++k) p *= g.phi[a];
    c.max_power_residual = std::max(c.max_power_residual, std::abs(p - m.fw[a]));
    max_f = std::max(max_f, std::abs(m.fw[a]));
    const double ap = std::abs(g.phi[a]);
    c.min_abs_phi = std::min(c.min_abs_phi, ap);
    c.max_abs_phi = std::max(c.max_abs_phi, ap);
  }
  c.power_bound = tol.phi_tol * (1.0 + max_f);
  c.power_ok = c.max_power_residual <= c.power_bound;
  c.r1 = std::pow(band_lo(r), 1.0 / N);
  c.r2 = std::pow(band_hi(r), 1.0 / N);
  c.annulus_ok = c.min_abs_phi > c.r1 && c.max_abs_phi < c.r2;
  c.path_ok = g.max_path_discrepancy <= 1e-6;

  // Injectivity: distinct nodes (at least one mesh step apart) need distinct
  // images. Nodes where one mesh step moves phi by less than the separation
  // (phi is flat next to a critical point of the boundary) cannot be resolved
  // at this precision and are left out.
  const double sep = 10.0 * tol.phi_tol;
  std::vector<std::size_t> by_re;
  for (const std::size_t a : live) {
    const FnValue d = f.eval_derivative(m.w[a]);
    const double speed = std::abs(g.phi[a]) * std::abs(d.value / m.fw[a]) / N;  // |phi'| = |phi| |f'/f| / N
    if (!d.infinite && speed * m.h > 10.0 * sep) {
      by_re.push_back(a);
    } else {
      ++c.injectivity_unresolved;
    }
  }
  std::sort(by_re.begin(), by_re.end(), [&](std::size_t a, std::size_t b) { return g.phi[a].real() < g.phi[b].real(); });
  for (std::size_t i = 0; i < by_re.size(); ++i)
    for (std::size_t j = i + 1; j < by_re.size() && g.phi[by_re[j]].real() - g.phi[by_re[i]].real() <= sep; ++j)
      if (std::abs(g.phi[by_re[j]] - g.phi[by_re[i]]) <= sep) ++c.injectivity_violations;
  c.injective_ok = c.injectivity_violations == 0;

  // Coverage of the radial range: gaps in sorted |phi| against the largest
  // change of |phi| across one mesh edge.
  std::vector<double> radii;
  double resolution = 0.0;
  for (const std::size_t a : live) {
    radii.push_back(std::abs(g.phi[a]));
    for (const int b : m.nbr[a])
      if (b >= 0 && !std::isnan(g.alpha[static_cast<std::size_t>(b)]))
        resolution = std::max(resolution, std::abs(std::abs(g.phi[a]) - std::abs(g.phi[static_cast<std::size_t>(b)])));
  }
  std::sort(radii.begin(), radii.end());
  double inner_gap = 0.0;
  for (std::size_t i = 1; i < radii.size(); ++i) inner_gap = std::max(inner_gap, radii[i] - radii[i - 1]);
  const double lo_gap = radii.front() - c.r1;
  const double hi_gap = std::isinf(c.r2) ? 0.0 : c.r2 - radii.back();
  const double clearance_steps = r.inner->kind == CurveRef::Kind::Point ? 2.0 * (1.5 * r.inner->mult + 0.5) : 2.0;
  c.coverage_gap = std::max({inner_gap, std::isinf(lo_gap) ? 0.0 : lo_gap, hi_gap});
  c.coverage_bound = 2.0 * clearance_steps * resolution;
  c.coverage_ok = inner_gap <= 2.0 * resolution && c.coverage_gap <= c.coverage_bound;

  // |phi| = |f|^(1/N) along the mid-level curve.
  double lo = kInf, hi = 0.0;
  for (const Complex z : spread(r.mid_curve, 64)) {
    const double a = std::abs(phi_at(f, r, z));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  c.level_image_spread = (hi - lo) / std::max(1.0, hi);
  c.level_ok = c.level_image_spread <= 1e-9;

  // Continuous extension: approach sampled boundary points along the segment
  // from the nearest mesh node; |phi| must tend to eps^(1/N).
  auto approach = [&](Complex b, double eps_b) {
    const int node = m.nearest_node(b);
    if (node < 0) return 0;
    const Complex from = m.w[static_cast<std::size_t>(node)];
    std::vector<Complex> pts;
    for (int j = 1; j <= 30; ++j) pts.push_back(b + std::ldexp(1.0, -j) * (from - b));
    for (const Complex z : pts)
      if (!in_band(r, f.abs(z))) return 0;
    const Complex last = phi_at(f, r, pts.back());
    const Complex prev = phi_at(f, r, pts[pts.size() - 2]);
    const double target = std::pow(eps_b, 1.0 / N);
    const double scale = std::max(1.0, target);
    const bool ok = std::abs(std::abs(last) - target) <= 1e-6 * scale && std::abs(last - prev) <= 1e-6 * scale;
    return ok ? 1 : -1;
  };
  std::vector<Complex> critical;
  if (r.outer->kind == CurveRef::Kind::LevelCurve)
    for (const auto& v : r.outer->component.vertices) critical.push_back(v.z);
  if (r.inner->kind == CurveRef::Kind::LevelCurve)
    for (const auto& v : r.inner->component.vertices) critical.push_back(v.z);
  auto near_critical = [&](Complex z) {
    for (const Complex v : critical)
      if (std::abs(z - v) < 4.0 * m.h) return true;
    return false;
  };
  auto check_boundary = [&](const Polyline& ring, double eps_b) {
    for (const Complex b : spread(ring, opts.boundary_samples)) {
      if (near_critical(b)) continue;
      const int res = approach(b, eps_b);
      if (res == 0) ++c.boundary_skipped;
      if (res > 0) ++c.boundary_checked;
      if (res < 0) ++c.boundary_failed;
    }
  };
  check_boundary(outer_ring(r), r.eps2);
  if (r.inner->kind == CurveRef::Kind::LevelCurve) {
    const auto& ig = *r.inner->graph;
    check_boundary(ig.faces[static_cast<std::size_t>(ig.unbounded_face())].ring, r.eps1);
  } else if (r.inner->kind == CurveRef::Kind::Point && !r.inner->pole) {
    const int res = approach(r.inner->point, 0.0);
    if (res == 0) ++c.boundary_skipped;
    if (res > 0) ++c.boundary_checked;
    if (res < 0) ++c.boundary_failed;
  }
  c.boundary_ok = c.boundary_failed == 0 && c.boundary_checked > 0 && c.boundary_skipped <= c.boundary_checked;

  c.pass = c.power_ok && c.annulus_ok && c.injective_ok && c.coverage_ok && c.path_ok && c.level_ok && c.boundary_ok;
  if (strict && !c.pass) {
    std::ostringstream os;
    os << "phi certificate failed for region " << r.id << ":";
    if (!c.power_ok) os << " power residual " << c.max_power_residual << " > " << c.power_bound << ";";
    if (!c.annulus_ok) os << " |phi| range [" << c.min_abs_phi << ", " << c.max_abs_phi << "] leaves (" << c.r1 << ", " << c.r2 << ");";
    if (!c.injective_ok) os << " " << c.injectivity_violations << " coincident images;";
    if (!c.coverage_ok) os << " coverage gap " << c.coverage_gap << " > " << c.coverage_bound << ";";
    if (!c.path_ok) os << " path discrepancy " << g.max_path_discrepancy << ";";
    if (!c.level_ok) os << " level image spread " << c.level_image_spread << ";";
    if (!c.boundary_ok)
      os << " boundary extension " << c.boundary_checked << " ok, " << c.boundary_failed << " failed, "
         << c.boundary_skipped << " skipped;";
    throw CertificateError(os.str());
  }
  return c;
}

Decomposition decompose(const RationalFn& f, const DomainSpec& domain, const Tolerances& tol,
                        const AnnulusOptions& opts) {
  validate_domain(f, domain);
  if (domain.kind == DomainSpec::Kind::WholePlane && f.numerator().degree() <= f.denominator().degree()) {
    throw UsageError("the whole-plane decomposition needs |f| -> infinity at infinity (deg numerator > deg denominator)");
  }
  if (domain.kind == DomainSpec::Kind::UnitDisk) {
    for (const auto& c : f.critical_points())
      if (std::abs(std::abs(c.z) - 1.0) < 1e-9) {
        throw UsageError("f has a critical point on the unit circle; the decomposition needs none on the boundary");
      }
  }
  if (domain.kind == DomainSpec::Kind::Rectangle && !domain.outer_level) {
    throw UsageError("a rectangle decomposition needs an explicit outer level");
  }
  Decomposition d;
  d.c = critical_level_curves(f, domain, tol);
  d.order = order_report(d.c, tol);
  if (d.c.members.empty()) throw UsageError("the critical set is empty");

  if (domain.kind == DomainSpec::Kind::UnitDisk) {
    d.outer_boundary = std::make_shared<const CurveRef>(CurveRef::boundary(unit_circle(4096), 1.0));
  } else {
    double top = 0.0;
    for (const auto& m : d.c.members)
      if (m.kind == CurveRef::Kind::LevelCurve) top = std::max(top, m.level);
    const double level = domain.outer_level ? *domain.outer_level : std::max(1.0, 2.0 * top);
    if (!(level > top)) throw UsageError("the outer level must exceed every critical value");
    const auto comps = trace_level_set(f, level, domain, tol);
    const LevelCurveComponent* best = nullptr;
    for (const auto& c : comps)
      if (best == nullptr || c.bbox().diameter() > best->bbox().diameter()) best = &c;
    if (best == nullptr || !best->vertices.empty()) throw NumericalError("no outer level curve found");
    auto outer = std::make_shared<const CurveRef>(CurveRef::level_curve(*best, tol));
    for (const auto& m : d.c.members)
      if (!precedes(m, *outer, tol)) throw UsageError("the outer level curve does not enclose the critical set");
    d.outer_boundary = outer;
  }

  std::vector<std::shared_ptr<const CurveRef>> shared;
  for (const auto& m : d.c.members) shared.push_back(std::make_shared<const CurveRef>(m));
  for (const auto& [lo, hi] : d.order.hasse) {
    AnnularRegion r;
    r.inner_member = lo;
    r.outer_member = hi;
    r.inner = shared[static_cast<std::size_t>(lo)];
    r.outer = shared[static_cast<std::size_t>(hi)];
    r.outer_face = face_holding(*r.inner, *r.outer, tol);
    d.regions.push_back(std::move(r));
  }
  {
    AnnularRegion r;
    r.inner_member = d.order.maximal;
    r.inner = shared[static_cast<std::size_t>(d.order.maximal)];
    r.outer = d.outer_boundary;
    d.regions.push_back(std::move(r));
  }
  for (std::size_t i = 0; i < d.regions.size(); ++i) d.regions[i].id = static_cast<int>(i);

  std::vector<Complex> forbidden;
  for (const auto& z : f.zeros_in(domain)) forbidden.push_back(z.z);
  for (const auto& p : f.poles_in(domain)) forbidden.push_back(p.z);
  for (const auto& c : f.critical_points_in(domain)) forbidden.push_back(c.z);

  d.certificates.resize(d.regions.size());
  parallel_for(d.regions.size(), opts.threads, [&](std::size_t i) {
    AnnularRegion& r = d.regions[i];
    r.eps1 = r.inner->level;
    r.eps2 = r.outer->level;
    if (!(std::abs(std::log(r.eps1) - std::log(r.eps2)) > tol.vertex_tol)) {
      throw CertificateError("region " + std::to_string(r.id) + " has equal boundary levels");
    }
    for (const Complex z : forbidden)
      if (r.contains(z)) {
        std::ostringstream os;
        os << "region " << r.id << " contains the distinguished point (" << z.real() << ", " << z.imag() << ")";
        throw CertificateError(os.str());
      }
    for (std::size_t k = 0; k < d.c.members.size(); ++k) {
      if (static_cast<int>(k) == r.inner_member || static_cast<int>(k) == r.outer_member) continue;
      const bool inside_outer = r.outer_member < 0 ||
                                face_holding(d.c.members[k], *r.outer, tol) == r.outer_face;
      if (inside_outer && !d.order.relation[k][static_cast<std::size_t>(r.inner_member)]) {
        throw CertificateError("region " + std::to_string(r.id) +
                               " has two bounded complementary components (member " + std::to_string(k) + ")");
      }
    }
    int grid = opts.grid;
    for (int attempt = 0;; ++attempt) {
      r.mesh = build_mesh(f, r, grid);
      if (attempt == 0) {
        winding_N(f, r, domain, tol);
        const int fine = band_grid(r, grid);
        if (fine > grid) {
          grid = fine;
          r.mesh = build_mesh(f, r, grid);
        }
      }
      if (build_phi(f, r)) break;
      if (attempt >= opts.max_refinements) {
        std::ostringstream os;
        os << "phi mesh for region " << r.id << " stays too coarse: edge arg increment " << r.phi.max_edge_increment
           << ", " << r.phi.unreached << " unreached nodes";
        throw NumericalError(os.str());
      }
      grid *= 2;
    }
    d.certificates[i] = verify_phi(f, r, tol, opts, true);
  });
  return d;
}

}  // namespace lvl
