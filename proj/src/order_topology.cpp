#include "levelcurve/order_topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levelcurve/error.hpp"

namespace lvl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string at(Complex z) {
  std::ostringstream os;
  os.precision(8);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

double ring_distance(const Polyline& ring, Complex z) {
  double d = kInf;
  for (std::size_t i = 0; i < ring.size(); ++i) d = std::min(d, point_segment_distance(z, ring[i], ring[(i + 1) % ring.size()]));
  return d;
}

// Closeness threshold for deciding whether two sets are disjoint.
double separation_floor(const CurveRef& b, const Tolerances& tol) {
  if (b.kind == CurveRef::Kind::LevelCurve) return b.graph->margin();
  return tol.trace_tol * std::max(1.0, std::abs(b.kind == CurveRef::Kind::Point ? b.point : b.ring.front()));
}

}  // namespace

CurveRef CurveRef::level_curve(LevelCurveComponent comp, const Tolerances& tol) {
  CurveRef r;
  r.kind = Kind::LevelCurve;
  r.level = comp.level;
  r.graph = std::make_shared<const LevelGraph>(build_graph(comp, tol));
  r.component = std::move(comp);
  return r;
}

CurveRef CurveRef::boundary(Polyline ring, double level) {
  if (ring.size() < 3) throw UsageError("a boundary component needs at least three points");
  CurveRef r;
  r.kind = Kind::BoundaryComponent;
  r.ring = std::move(ring);
  Polyline closed = r.ring;
  closed.push_back(r.ring.front());
  r.closed_ring = std::make_shared<const Polyline>(std::move(closed));
  r.ring_index = std::make_shared<const SegmentIndex>(std::vector<const Polyline*>{r.closed_ring.get()});
  r.level = level;
  return r;
}

CurveRef CurveRef::zero_or_pole(const RootMult& root, bool is_pole) {
  CurveRef r;
  r.kind = Kind::Point;
  r.point = root.z;
  r.mult = root.mult;
  r.pole = is_pole;
  r.level = is_pole ? kInf : 0.0;
  return r;
}

std::vector<Complex> CurveRef::all_points() const {
  switch (kind) {
    case Kind::LevelCurve:
      return component.sample_points();
    case Kind::BoundaryComponent:
      return ring;
    default:
      return {point};
  }
}

std::vector<Complex> CurveRef::samples(int count) const {
  const std::vector<Complex> pts = all_points();
  if (static_cast<int>(pts.size()) <= count) return pts;
  std::vector<Complex> out;
  const std::size_t n = pts.size();
  for (int k = 0; k < count; ++k) out.push_back(pts[(2 * static_cast<std::size_t>(k) + 1) * n / (2 * static_cast<std::size_t>(count))]);
  return out;
}

double CurveRef::distance_to(Complex z, double limit) const {
  switch (kind) {
    case Kind::LevelCurve:
      return graph->distance_to_curve(z, limit);
    case Kind::BoundaryComponent:
      return ring_index ? ring_index->distance(z, limit) : ring_distance(ring, z);
    default:
      return std::abs(z - point);
  }
}

int CurveRef::face_of(Complex z) const {
  switch (kind) {
    case Kind::LevelCurve:
      return graph->face_of_point(z);
    case Kind::BoundaryComponent:
      return winding_number(ring, z) != 0 ? 0 : -1;
    default:
      return -1;
  }
}

bool CurveRef::face_is_bounded(int face) const {
  switch (kind) {
    case Kind::LevelCurve:
      return face >= 0 && graph->faces[static_cast<std::size_t>(face)].bounded;
    case Kind::BoundaryComponent:
      return face == 0;
    default:
      return false;
  }
}

std::string CurveRef::describe() const {
  std::ostringstream os;
  os.precision(10);
  switch (kind) {
    case Kind::LevelCurve:
      os << (is_critical() ? "critical" : "non-critical") << " level curve at |f| = " << level;
      break;
    case Kind::BoundaryComponent:
      os << "boundary component at |f| = " << level;
      break;
    default:
      os << (pole ? "pole" : "zero") << " of order " << mult << " at " << at(point);
  }
  return os.str();
}

namespace {
// Largest gap between a polyline and the smooth curve through its vertices,
// from the turning angle at each joint: about s * theta / 8 for step s.
double chord_sagitta(const LevelCurveComponent& c) {
  double worst = 0.0;
  for (const Polyline* pl : c.polylines())
    for (std::size_t i = 1; i + 1 < pl->size(); ++i) {
      const Complex u = (*pl)[i] - (*pl)[i - 1], v = (*pl)[i + 1] - (*pl)[i];
      if (u == Complex(0.0, 0.0) || v == Complex(0.0, 0.0)) continue;
      const double theta = std::abs(std::arg(v / u));
      worst = std::max(worst, std::max(std::abs(u), std::abs(v)) * theta / 8.0);
    }
  return worst;
}
}  // namespace

int face_holding(const CurveRef& a, const CurveRef& b, const Tolerances& tol) {
  const double floor = separation_floor(b, tol);
  double dmin = kInf;
  for (const Complex z : a.all_points()) dmin = std::min(dmin, b.distance_to(z, 2.0 * floor));
  if (!(dmin > floor)) {
    std::ostringstream os;
    os << "sets too close to order: " << a.describe() << " and " << b.describe() << " are " << dmin
       << " apart (threshold " << floor << ")";
    throw UsageError(os.str());
  }
  // Vote with points of a that sit clearly off b: within a few chord
  // sagittas, the polylines of two curves can pass on the wrong side of each
  // other.
  const double clear = b.kind == CurveRef::Kind::LevelCurve ? std::max(floor, 4.0 * chord_sagitta(b.component)) : floor;
  std::vector<Complex> safe;
  for (const Complex z : a.all_points())
    if (b.distance_to(z, 2.0 * clear) > clear) safe.push_back(z);
  std::vector<Complex> s;
  if (safe.empty()) {
    std::ostringstream os;
    os << "cannot order " << a.describe() << " against " << b.describe() << ": every sample lies within " << clear
       << " of it, below the polyline resolution";
    throw NumericalError(os.str());
  } else if (safe.size() <= 8) {
    s = safe;
  } else {
    for (std::size_t k = 0; k < 8; ++k) s.push_back(safe[(2 * k + 1) * safe.size() / 16]);
  }
  const int face = b.face_of(s.front());
  for (const Complex z : s) {
    const int other = b.face_of(z);
    if (other != face) {
      throw NumericalError("face vote disagrees: samples of " + a.describe() + " fall in faces " +
                           std::to_string(face) + " and " + std::to_string(other) + " of " + b.describe());
    }
  }
  return face;
}

bool precedes(const CurveRef& a, const CurveRef& b, const Tolerances& tol) {
  return b.face_is_bounded(face_holding(a, b, tol));
}

int CriticalSetC::curve_count() const {
  int n = 0;
  for (const auto& m : members) n += m.kind == CurveRef::Kind::LevelCurve;
  return n;
}

CriticalSetC critical_level_curves(const RationalFn& f, const DomainSpec& domain, const Tolerances& tol) {
  const Tracer tracer(f, domain, tol);
  CriticalSetC c;
  for (const CurveVertex& v : tracer.critical_vertices()) {
    bool covered = false;
    for (const auto& m : c.members)
      for (const auto& w : m.component.vertices) covered = covered || std::abs(w.z - v.z) <= 1e-9 * tracer.scale();
    if (covered) continue;
    CurveRef m = CurveRef::level_curve(tracer.trace_through_vertex(v), tol);
    m.graph->check_invariants();
    c.members.push_back(std::move(m));
  }
  for (const auto& z : f.zeros_in(domain)) c.members.push_back(CurveRef::zero_or_pole(z, false));
  for (const auto& p : f.poles_in(domain)) c.members.push_back(CurveRef::zero_or_pole(p, true));
  return c;
}

OrderReport order_report(const CriticalSetC& c, const Tolerances& tol) {
  const std::size_t n = c.members.size();
  OrderReport r;
  r.relation.assign(n, std::vector<char>(n, 0));
  std::vector<std::vector<int>> face(n, std::vector<int>(n, -2));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      face[i][j] = face_holding(c.members[i], c.members[j], tol);
      r.relation[i][j] = c.members[j].face_is_bounded(face[i][j]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (r.relation[i][j] && r.relation[j][i]) {
        throw CertificateError("order is not asymmetric: members " + std::to_string(i) + " and " + std::to_string(j) +
                               " each lie in a bounded face of the other");
      }
      if (!r.relation[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (r.relation[j][k] && !r.relation[i][k]) {
          throw CertificateError("order is not transitive at members " + std::to_string(i) + ", " + std::to_string(j) +
                                 ", " + std::to_string(k));
        }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!r.relation[i][j]) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k) covered = !(r.relation[i][k] && r.relation[k][j]);
      if (covered) r.hasse.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

  // Unique maximal element among a subset of members.
  auto unique_max = [&](const std::vector<std::size_t>& subset, const std::string& where) {
    int found = -1;
    for (const std::size_t i : subset) {
      bool maximal = true;
      for (const std::size_t j : subset) maximal = maximal && !r.relation[i][j];
      if (!maximal) continue;
      if (found >= 0) {
        throw CertificateError("two maximal members " + std::to_string(found) + " and " + std::to_string(i) + where);
      }
      found = static_cast<int>(i);
    }
    return found;
  };
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  if (n > 0) r.maximal = unique_max(all, "");
  for (std::size_t j = 0; j < n; ++j) {
    const CurveRef& m = c.members[j];
    if (m.kind != CurveRef::Kind::LevelCurve) continue;
    for (const auto& fc : m.graph->faces) {
      if (!fc.bounded) continue;
      std::vector<std::size_t> inside;
      for (std::size_t i = 0; i < n; ++i)
        if (i != j && face[i][j] == fc.id) inside.push_back(i);
      if (!inside.empty()) unique_max(inside, " inside face " + std::to_string(fc.id) + " of member " + std::to_string(j));
    }
  }
  return r;
}

const CurveRef& maximal_component(const CriticalSetC& c, const Tolerances& tol) {
  if (c.members.empty()) throw UsageError("the critical set is empty");
  const OrderReport r = order_report(c, tol);
  return c.members[static_cast<std::size_t>(r.maximal)];
}

Separation separating_curve(const RationalFn& f, const CurveRef& l, const std::vector<Complex>& k,
                            const DomainSpec& domain, const Tolerances& tol) {
  if (k.empty()) throw UsageError("separating_curve needs a nonempty K");
  int k_face = -2;
  for (const Complex z : k) {
    if (!(l.distance_to(z) > separation_floor(l, tol))) throw UsageError("K touches L at " + at(z));
    const int face = l.face_of(z);
    if (k_face != -2 && face != k_face) throw UsageError("K is not contained in one face of L");
    k_face = face;
  }
  const Tracer tracer(f, domain, tol);
  std::vector<double> critical_logs;
  for (const auto& v : tracer.critical_vertices()) critical_logs.push_back(std::log(v.level));

  const std::vector<Complex> lpts = l.all_points();
  // K points by distance to L; for each, the nearest point of L.
  std::vector<std::pair<double, std::pair<Complex, Complex>>> pairs;
  for (const Complex z : k) {
    double best = kInf;
    Complex near = lpts.front();
    for (const Complex p : lpts)
      if (std::abs(p - z) < best) {
        best = std::abs(p - z);
        near = p;
      }
    pairs.push_back({best, {near, z}});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  // Candidates start next to L, where the level is close to that of L.
  std::vector<double> ts;
  for (int j = 1; j < 64; ++j) ts.push_back(j / 64.0);
  for (const auto& [dist, seg] : pairs) {
    const auto [from, to] = seg;
    for (const double t : ts) {
      const Complex z = from + t * (to - from);
      if (!domain.contains(z)) continue;
      const double eps = f.abs(z);
      if (!(eps > 0.0) || !std::isfinite(eps)) continue;
      bool near_critical = false;
      for (const double lc : critical_logs) near_critical = near_critical || std::abs(std::log(eps) - lc) < 1e-4;
      if (near_critical) continue;
      try {
        LevelCurveComponent comp = tracer.trace_component(eps, z);
        if (!comp.vertices.empty()) continue;
        Separation s;
        s.curve = CurveRef::level_curve(std::move(comp), tol);
        s.min_critical_distance = kInf;
        bool clear = true;
        for (const auto& v : tracer.critical_vertices()) {
          const double d = s.curve.distance_to(v.z);
          s.min_critical_distance = std::min(s.min_critical_distance, d);
          clear = clear && d > v.capture_radius;
        }
        if (!clear) continue;
        s.face_of_l = face_holding(l, s.curve, tol);
        int fk = -2;
        bool same = true;
        for (const Complex p : k) {
          if (!(s.curve.distance_to(p) > s.curve.graph->margin())) {
            same = false;
            break;
          }
          const int face = s.curve.face_of(p);
          same = same && (fk == -2 || face == fk);
          fk = face;
        }
        if (!same || fk == s.face_of_l) continue;
        s.face_of_k = fk;
        s.l_in_bounded = s.curve.face_is_bounded(s.face_of_l);
        s.k_in_bounded = s.curve.face_is_bounded(s.face_of_k);
        return s;
      } catch (const UsageError&) {
        continue;
      } catch (const NumericalError&) {
        continue;
      }
    }
  }
  throw NumericalError("no separating level curve found between " + l.describe() +
                       " and K; K may touch the critical set in between");
}

Witness two_curve_critical_witness(const CriticalSetC& c, const CurveRef& l1, const CurveRef& l2,
                                   const Tolerances& tol) {
  if (precedes(l1, l2, tol) || precedes(l2, l1, tol)) {
    throw UsageError("two-curve witness needs mutually exterior curves; got " + l1.describe() + " and " + l2.describe() +
                     " nested");
  }
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    const CurveRef& m = c.members[i];
    if (m.kind == CurveRef::Kind::Point) continue;
    int f1, f2;
    try {
      f1 = face_holding(l1, m, tol);
      f2 = face_holding(l2, m, tol);
    } catch (const UsageError&) {
      continue;  // one of the curves is this member itself
    }
    if (f1 != f2 && m.face_is_bounded(f1) && m.face_is_bounded(f2)) return {static_cast<int>(i), f1, f2};
  }
  throw CertificateError("no critical level curve separates " + l1.describe() + " from " + l2.describe() +
                         " into distinct bounded faces");
}

}  // namespace lvl
