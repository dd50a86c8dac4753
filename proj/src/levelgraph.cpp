#include "levelcurve/levelgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "levelcurve/error.hpp"

namespace lvl {
namespace {

std::string where(Complex z) {
  std::ostringstream os;
  os.precision(10);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// Points of dart d in walking order.
void append_dart(const LevelGraph& g, int d, Polyline& ring) {
  const GraphEdge& e = g.edges[static_cast<std::size_t>(d / 2)];
  const Polyline& pl = g.polylines[static_cast<std::size_t>(e.polyline)];
  const bool forward = d % 2 == 0;
  const std::size_t n = pl.size();
  // The last point of each dart is the first point of the next one.
  for (std::size_t i = 0; i + 1 < n; ++i) ring.push_back(forward ? pl[i] : pl[n - 1 - i]);
}

Complex dart_direction(const LevelGraph& g, int d) {
  const GraphEdge& e = g.edges[static_cast<std::size_t>(d / 2)];
  const Polyline& pl = g.polylines[static_cast<std::size_t>(e.polyline)];
  const std::size_t n = pl.size();
  return d % 2 == 0 ? pl[1] - pl[0] : pl[n - 2] - pl[n - 1];
}

}  // namespace

int LevelGraph::bounded_face_count() const {
  int n = 0;
  for (const auto& f : faces) n += f.bounded;
  return n;
}

int LevelGraph::unbounded_face() const {
  for (const auto& f : faces)
    if (!f.bounded) return f.id;
  return -1;
}

int LevelGraph::sum_mult() const {
  int s = 0;
  for (const auto& v : vertices) s += v.mult;
  return s;
}

int LevelGraph::face_of_point(Complex z) const {
  const double d = index_.distance(z, 2.0 * margin_);
  if (d <= margin_) {
    throw UsageError("point " + where(z) + " lies on the level curve (distance " + std::to_string(d) + ")");
  }
  int found = -1;
  for (const auto& f : faces) {
    if (!f.bounded) continue;
    const int w = winding_number(f.ring, z);
    if (w == 0) continue;
    if (w != 1 || found >= 0) {
      throw CertificateError("face membership of " + where(z) + " is ambiguous (winding " + std::to_string(w) + ")");
    }
    found = f.id;
  }
  return found >= 0 ? found : unbounded_face();
}

void LevelGraph::check_invariants() const {
  std::ostringstream os;
  const int V = static_cast<int>(vertices.size());
  const int E = static_cast<int>(edges.size());
  const int F = static_cast<int>(faces.size());
  for (const auto& v : vertices) {
    if (v.degree != 2 * (v.mult + 1)) {
      os << "degree law: vertex " << v.id << " at " << where(v.z) << " has degree " << v.degree << ", expected "
         << 2 * (v.mult + 1);
      throw CertificateError(os.str());
    }
    if (v.degree < 4 || v.degree % 2 != 0) {
      os << "admissibility: vertex " << v.id << " has degree " << v.degree;
      throw CertificateError(os.str());
    }
  }
  std::vector<int> face_of_dart(static_cast<std::size_t>(2 * E), -1);
  for (const auto& f : faces)
    for (const int d : f.darts) face_of_dart[static_cast<std::size_t>(d)] = f.id;
  for (int e = 0; e < E; ++e) {
    const int a = face_of_dart[static_cast<std::size_t>(2 * e)];
    const int b = face_of_dart[static_cast<std::size_t>(2 * e + 1)];
    if (a < 0 || b < 0 || a == b) {
      os << "edge " << e << " is not adjacent to two distinct faces (faces " << a << ", " << b << ")";
      throw CertificateError(os.str());
    }
  }
  int unbounded = 0;
  for (const auto& f : faces) unbounded += !f.bounded;
  if (unbounded != 1) {
    os << "expected exactly one unbounded face, found " << unbounded;
    throw CertificateError(os.str());
  }
  const int s = sum_mult();
  if (bounded_face_count() != s + 1 || F != s + 2) {
    os << "face count: " << bounded_face_count() << " bounded of " << F << " faces, expected " << s + 1 << " of "
       << s + 2;
    throw CertificateError(os.str());
  }
  if (V > 0 && F != E - V + 2) {
    os << "Euler relation fails: F=" << F << " E=" << E << " V=" << V;
    throw CertificateError(os.str());
  }
}

LevelGraph build_graph(const LevelCurveComponent& comp, const Tolerances& tol) {
  LevelGraph g;
  g.level = comp.level;
  for (std::size_t i = 0; i < comp.vertices.size(); ++i) {
    g.vertices.push_back({static_cast<int>(i), comp.vertices[i].z, comp.vertices[i].mult, 0});
  }
  for (std::size_t i = 0; i < comp.arcs.size(); ++i) {
    const TracedArc& a = comp.arcs[i];
    if (a.points.size() < 2) throw NumericalError("degenerate traced arc with fewer than two points");
    g.edges.push_back({static_cast<int>(i), a.start_vertex, a.end_vertex, a.closed, static_cast<int>(i)});
    g.polylines.push_back(a.points);
  }
  std::vector<const Polyline*> lines;
  for (const auto& p : g.polylines) lines.push_back(&p);
  g.index_ = SegmentIndex(lines);
  const Box box = comp.bbox();
  g.margin_ = tol.trace_tol * std::max(1.0, box.diameter());

  const int E = static_cast<int>(g.edges.size());
  if (g.vertices.empty()) {
    if (E != 1 || !g.edges[0].closed) {
      throw NumericalError("a component without vertices must be a single closed curve");
    }
    Polyline ring(g.polylines[0].begin(), g.polylines[0].end() - 1);
    const double area = signed_area(ring);
    GraphFace inner, outer;
    inner.bounded = true;
    outer.bounded = false;
    // Dart 0 follows the stored orientation; the face on its left is the
    // interior exactly when that orientation is counterclockwise.
    inner.darts = {area > 0.0 ? 0 : 1};
    outer.darts = {area > 0.0 ? 1 : 0};
    inner.ring = area > 0.0 ? ring : Polyline(ring.rbegin(), ring.rend());
    outer.ring = Polyline(inner.ring.rbegin(), inner.ring.rend());
    inner.area = std::abs(area);
    outer.area = -std::abs(area);
    inner.id = 0;
    outer.id = 1;
    g.faces = {inner, outer};
  } else {
    // Rotation system: outgoing darts at each vertex sorted by tangent angle.
    std::vector<std::vector<std::pair<double, int>>> rot(g.vertices.size());
    for (int e = 0; e < E; ++e) {
      const GraphEdge& ed = g.edges[static_cast<std::size_t>(e)];
      if (ed.v_from < 0 || ed.v_to < 0) throw NumericalError("arc without endpoints in a component with vertices");
      rot[static_cast<std::size_t>(ed.v_from)].push_back({std::arg(dart_direction(g, 2 * e)), 2 * e});
      rot[static_cast<std::size_t>(ed.v_to)].push_back({std::arg(dart_direction(g, 2 * e + 1)), 2 * e + 1});
    }
    std::vector<int> pos_in_rot(static_cast<std::size_t>(2 * E));
    std::vector<int> origin(static_cast<std::size_t>(2 * E));
    for (std::size_t v = 0; v < rot.size(); ++v) {
      auto& r = rot[v];
      std::sort(r.begin(), r.end());
      g.vertices[v].degree = static_cast<int>(r.size());
      for (std::size_t k = 0; k < r.size(); ++k) {
        const double gap = k + 1 < r.size() ? r[k + 1].first - r[k].first : r[0].first + 2.0 * M_PI - r[k].first;
        if (r.size() > 1 && gap < tol.angle_tol) {
          throw NumericalError("rotation ambiguity at vertex " + where(g.vertices[v].z) +
                               ": two incident arcs leave within " + std::to_string(gap) + " rad");
        }
        pos_in_rot[static_cast<std::size_t>(r[k].second)] = static_cast<int>(k);
        origin[static_cast<std::size_t>(r[k].second)] = static_cast<int>(v);
      }
    }
    // next(d): from the head of d, the outgoing dart just clockwise of twin(d).
    auto next = [&](int d) {
      const int t = d ^ 1;
      const auto& r = rot[static_cast<std::size_t>(origin[static_cast<std::size_t>(t)])];
      const int k = pos_in_rot[static_cast<std::size_t>(t)];
      const int n = static_cast<int>(r.size());
      return r[static_cast<std::size_t>((k - 1 + n) % n)].second;
    };
    std::vector<char> seen(static_cast<std::size_t>(2 * E), 0);
    for (int d0 = 0; d0 < 2 * E; ++d0) {
      if (seen[static_cast<std::size_t>(d0)]) continue;
      GraphFace f;
      f.id = static_cast<int>(g.faces.size());
      int d = d0;
      do {
        seen[static_cast<std::size_t>(d)] = 1;
        f.darts.push_back(d);
        append_dart(g, d, f.ring);
        d = next(d);
      } while (d != d0 && static_cast<int>(f.darts.size()) <= 2 * E);
      if (d != d0) throw NumericalError("face walk did not close");
      f.area = signed_area(f.ring);
      f.bounded = f.area > 0.0;
      g.faces.push_back(std::move(f));
    }
  }

  // Representative points: the ring centroid when it validates, otherwise a
  // point offset to the left of a boundary segment, shrinking the offset.
  const double diam = std::max(box.diameter(), 1e-12);
  for (auto& f : g.faces) {
    if (!f.bounded) {
      f.rep = Complex(box.x1 + 0.25 * diam + 1.0, 0.5 * (box.y0 + box.y1));
      continue;
    }
    auto valid = [&](Complex z) {
      if (g.index_.distance(z) <= 100.0 * g.margin_) return false;
      try {
        return g.face_of_point(z) == f.id;
      } catch (const Error&) {
        return false;
      }
    };
    Complex centroid(0.0, 0.0);
    for (const Complex z : f.ring) centroid += z;
    centroid /= static_cast<double>(f.ring.size());
    bool ok = valid(centroid);
    if (ok) f.rep = centroid;
    // Prefer the longest segments: their midpoints sit away from vertices.
    std::vector<std::size_t> order(f.ring.size());
    std::iota(order.begin(), order.end(), 0);
    auto seg_len = [&](std::size_t i) { return std::abs(f.ring[(i + 1) % f.ring.size()] - f.ring[i]); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seg_len(a) > seg_len(b); });
    for (double frac = 0.5; !ok && frac > 1e-6; frac *= 0.25) {
      for (std::size_t k = 0; k < std::min<std::size_t>(order.size(), 16) && !ok; ++k) {
        const std::size_t i = order[k];
        const Complex a = f.ring[i], b = f.ring[(i + 1) % f.ring.size()];
        const double len = std::abs(b - a);
        if (len == 0.0) continue;
        const Complex left = Complex(0.0, 1.0) * (b - a) / len;
        const Complex z = 0.5 * (a + b) + frac * len * left;
        if (valid(z)) {
          f.rep = z;
          ok = true;
        }
      }
    }
    if (!ok) throw NumericalError("no interior representative point found for face " + std::to_string(f.id));
  }
  return g;
}

FaceCounts face_count(const LevelGraph& g) {
  FaceCounts c{g.bounded_face_count(), g.total_face_count()};
  const int s = g.sum_mult();
  if (c.bounded != s + 1 || c.total != s + 2) {
    std::ostringstream os;
    os << "face enumeration gives " << c.bounded << " bounded / " << c.total << " total; formula expects " << s + 1
       << " / " << s + 2;
    throw CertificateError(os.str());
  }
  return c;
}

std::map<int, std::vector<RootMult>> zeros_per_face(const LevelGraph& g, const RationalFn& f,
                                                    const DomainSpec& domain) {
  std::map<int, std::vector<RootMult>> out;
  for (const auto& fc : g.faces) out[fc.id];
  for (const auto* set : {&f.zeros(), &f.poles()})
    for (const auto& r : *set) {
      if (!domain.contains(r.z)) continue;
      out[g.face_of_point(r.z)].push_back(r);
    }
  for (const auto& fc : g.faces) {
    if (fc.bounded && out[fc.id].empty()) {
      throw CertificateError("bounded face " + std::to_string(fc.id) +
                             " contains no zero or pole of f (maximum modulus violated)");
    }
  }
  return out;
}

}  // namespace lvl
