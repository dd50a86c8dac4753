#include "levelcurve/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "levelcurve/error.hpp"
#include "levelcurve/kernels.hpp"

namespace lvl {
namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();

std::string where(Complex z) {
  std::ostringstream os;
  os.precision(10);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

double dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ---------------------------------------------------------------------------
// LevelCurveComponent

Box LevelCurveComponent::bbox() const {
  Box b;
  for (const auto& a : arcs)
    for (const Complex z : a.points) b.add(z);
  return b;
}

std::vector<Complex> LevelCurveComponent::sample_points() const {
  std::vector<Complex> out;
  for (const auto& a : arcs) out.insert(out.end(), a.points.begin(), a.points.end());
  return out;
}

std::vector<const Polyline*> LevelCurveComponent::polylines() const {
  std::vector<const Polyline*> out;
  for (const auto& a : arcs) out.push_back(&a.points);
  return out;
}

double LevelCurveComponent::max_segment() const {
  double m = 0.0;
  for (const auto& a : arcs)
    for (std::size_t i = 1; i < a.points.size(); ++i) m = std::max(m, std::abs(a.points[i] - a.points[i - 1]));
  return m;
}

double LevelCurveComponent::total_arg_change() const {
  double s = 0.0;
  for (const auto& a : arcs) s += a.arg_change;
  return s;
}

// ---------------------------------------------------------------------------
// Tracer setup

Tracer::Tracer(const RationalFn& f, const DomainSpec& domain, const Tolerances& tol)
    : f_(&f), domain_(domain), tol_(tol) {
  validate_domain(f, domain);
  scale_ = f.scale(domain);
  h_max_ = tol_.step_max * scale_;

  std::vector<Complex> special;
  for (const auto& r : f.zeros()) special.push_back(r.z);
  for (const auto& r : f.poles()) special.push_back(r.z);
  for (const auto& r : f.critical_points()) special.push_back(r.z);

  for (const auto& c : f.critical_points_in(domain)) {
    const FnValue fv = f.eval(c.z);
    if (fv.infinite || std::abs(fv.value) == 0.0) continue;
    CurveVertex v;
    v.z = c.z;
    v.mult = c.mult;
    v.value = fv.value;
    v.level = std::abs(fv.value);
    const int m = c.mult;
    const std::vector<Complex> t = f.taylor(c.z, m + 1);
    const Complex a = t[static_cast<std::size_t>(m + 1)];
    if (std::abs(a) == 0.0) {
      throw NumericalError("critical point " + where(c.z) + " has a vanishing leading Taylor coefficient");
    }
    // Below this radius |f| - |f(c)| is lost in the rounding noise of f(c).
    const double ac = std::abs(c.z);
    const double noise = 4.0 * kMachEps *
                         (f.numerator().abs_bound(ac) / std::abs(f.numerator()(c.z)) +
                          f.denominator().abs_bound(ac) / std::abs(f.denominator()(c.z)));
    const double fuzz = std::pow(v.level * noise / std::abs(a), 1.0 / (m + 1));
    double sep = std::numeric_limits<double>::infinity();
    for (const Complex s : special)
      if (s != c.z) sep = std::min(sep, std::abs(s - c.z));
    double r0 = std::max(1e-6 * scale_, 4.0 * fuzz);
    r0 = std::max(std::min(r0, 0.02 * sep), 2.0 * fuzz);
    v.start_radius = r0;
    v.capture_radius = 1.5 * r0;
    const double base = M_PI / 2.0 - std::arg(a / fv.value);
    for (int k = 0; k < 2 * (m + 1); ++k) v.slot_angles.push_back(wrap_angle((base + k * M_PI) / (m + 1)));
    crit_.push_back(std::move(v));
  }
  double r_min = std::numeric_limits<double>::infinity();
  for (const auto& v : crit_) r_min = std::min(r_min, v.start_radius);
  h_min_ = std::min(tol_.step_min * scale_, std::isfinite(r_min) ? 0.05 * r_min : tol_.step_min * scale_);
}

std::vector<CurveVertex> Tracer::vertices_at(double eps) const {
  std::vector<CurveVertex> out;
  const double le = std::log(eps);
  for (const auto& v : crit_)
    if (std::abs(std::log(v.level) - le) <= tol_.vertex_tol) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Local geometry

Complex Tracer::tangent(Complex z) const {
  const Complex w = f_->log_derivative(z);
  const double a = std::abs(w);
  if (!(a > 0.0) || !std::isfinite(a)) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  return Complex(0.0, 1.0) * std::conj(w) / a;
}

double Tracer::relative_noise(Complex z) const {
  const double r = std::abs(z);
  return 4.0 * kMachEps *
         (f_->numerator().abs_bound(r) / std::abs(f_->numerator()(z)) +
          f_->denominator().abs_bound(r) / std::abs(f_->denominator()(z)));
}

bool Tracer::correct(Complex& z, double eps, int* iterations) const {
  const double log_level = std::log(eps);
  // Stop once log|f| is within its own rounding noise of the target.
  const double tight = std::max(4.0 * kMachEps, 2.0 * relative_noise(z));
  int it = 0;
  double u = f_->log_abs(z) - log_level;
  for (; it < 8 && std::abs(u) > tight; ++it) {
    const Complex w = f_->log_derivative(z);
    if (!finite(w) || std::abs(w) == 0.0) return false;
    const Complex dz = -u / w;
    z += dz;
    const double u_next = f_->log_abs(z) - log_level;
    if (!std::isfinite(u_next)) return false;
    const bool stalled = std::abs(dz) <= 4.0 * kMachEps * std::max(1.0, std::abs(z));
    u = u_next;
    if (stalled) {
      ++it;
      break;
    }
  }
  if (iterations != nullptr) *iterations = it;
  if (!finite(z)) return false;
  const double floor = eps * relative_noise(z);
  return std::abs(f_->abs(z) - eps) <= 0.5 * level_tolerance(eps) + floor;
}

double Tracer::step_limit(Complex z) const {
  double h = h_max_;
  for (const auto& v : crit_) {
    const double d = std::abs(z - v.z);
    h = std::min(h, std::max(0.5 * d, 0.25 * v.start_radius));
  }
  return h;
}

double Tracer::escape_radius(double level) const {
  switch (domain_.kind) {
    case DomainSpec::Kind::WholePlane:
      return 1.5 * f_->level_radius_bound(level) + scale_;
    case DomainSpec::Kind::UnitDisk:
      return 1.0;
    case DomainSpec::Kind::Rectangle:
      return std::hypot(std::max(std::abs(domain_.x0), std::abs(domain_.x1)),
                        std::max(std::abs(domain_.y0), std::abs(domain_.y1)));
  }
  return std::numeric_limits<double>::infinity();
}

void Tracer::check_position(Complex z, double escape) const {
  switch (domain_.kind) {
    case DomainSpec::Kind::WholePlane:
      if (std::abs(z) > escape) {
        throw NumericalError("level curve escaped past the radius bound at " + where(z) +
                             "; the level set appears unbounded");
      }
      break;
    case DomainSpec::Kind::UnitDisk:
      if (std::abs(z) >= 1.0) throw NumericalError("level curve reached the unit circle at " + where(z));
      break;
    case DomainSpec::Kind::Rectangle:
      if (!domain_.contains(z)) {
        throw UsageError("a level curve crosses the rectangle boundary at " + where(z) +
                         "; choose bounds that contain every level curve of interest");
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Continuation

Tracer::MarchEnd Tracer::march(double level, Complex start, const CurveVertex* from, int from_index,
                               const std::vector<CurveVertex>& candidates, TracedArc& arc) const {
  const double escape = escape_radius(level);
  Polyline& pts = arc.points;
  Complex z = start;
  double arg_prev = std::arg(f_->eval(z).value);
  if (!pts.empty()) arc.arg_change += wrap_angle(arg_prev - std::arg(f_->eval(pts.back()).value));
  pts.push_back(z);
  Complex t = tangent(z);
  if (!finite(t)) throw NumericalError("tangent undefined at " + where(z));
  double h = std::min(h_max_, step_limit(z));
  bool left_start = from == nullptr;

  for (;;) {
    if (pts.size() > tol_.max_points) {
      throw NumericalError("arc exceeded " + std::to_string(tol_.max_points) + " points near " + where(z) +
                           "; suspected unbounded level curve");
    }
    h = std::min(h, step_limit(z));

    if (from == nullptr && pts.size() > 8) {
      const Complex to_start = start - z;
      const double d0 = std::abs(to_start);
      if (d0 <= 2.0 * h && dot(t, to_start) > 0.0 &&
          arc.arg_change + wrap_angle(std::arg(f_->eval(start).value) - arg_prev) > 2.0 * M_PI - 0.5) {
        if (d0 <= 1.05 * h) {
          arc.arg_change += wrap_angle(std::arg(f_->eval(start).value) - arg_prev);
          pts.push_back(start);
          arc.closed = true;
          return {true, -1, -1};
        }
        h = 0.6 * d0;
      }
    }

    Complex zc;
    int iters = 0;
    double turn = 0.0;
    for (;;) {
      const Complex zm = z + 0.5 * h * t;
      const Complex tm = tangent(zm);
      const Complex zp = z + h * (finite(tm) ? tm : t);
      zc = zp;
      bool ok = correct(zc, level, &iters);
      if (ok) {
        const Complex tc = tangent(zc);
        turn = finite(tc) ? std::abs(std::arg(tc * std::conj(t))) : M_PI;
        ok = iters <= 3 && std::abs(zc - zp) <= 0.25 * h && turn <= tol_.max_turn && std::abs(zc - z) >= 0.5 * h;
      }
      if (ok) break;
      h *= 0.5;
      if (h < h_min_) {
        throw NumericalError("step size underflow while tracing |f| = " + std::to_string(level) + " near " +
                             where(z) + " (stiff curvature)");
      }
    }
    check_position(zc, escape);
    const double arg_now = std::arg(f_->eval(zc).value);
    arc.arg_change += wrap_angle(arg_now - arg_prev);
    arg_prev = arg_now;
    z = zc;
    pts.push_back(z);
    t = tangent(z);

    if (from != nullptr && !left_start && std::abs(z - from->z) > 2.0 * from->capture_radius) left_start = true;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const CurveVertex& v = candidates[i];
      if (static_cast<int>(i) == from_index && !left_start) continue;
      if (std::abs(z - v.z) >= v.capture_radius) continue;
      const double psi = std::arg(z - v.z);
      int slot = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < v.slot_angles.size(); ++k) {
        const double d = std::abs(wrap_angle(psi - v.slot_angles[k]));
        if (d < best) {
          best = d;
          slot = static_cast<int>(k);
        }
      }
      arc.arg_change += wrap_angle(std::arg(v.value) - arg_prev);
      pts.push_back(v.z);
      return {false, static_cast<int>(i), slot};
    }
    if (iters <= 1 && turn < tol_.max_turn / 3.0) h *= 1.5;
    h = std::min(h, h_max_);
  }
}

LevelCurveComponent Tracer::trace_from(const std::vector<CurveVertex>& candidates, int first) const {
  LevelCurveComponent comp;
  const double level = candidates[static_cast<std::size_t>(first)].level;
  comp.level = level;
  std::vector<int> comp_index(candidates.size(), -1);
  std::vector<int> cand_of;  // component vertex -> candidate index
  std::vector<std::vector<char>> used;
  auto add_vertex = [&](int ci) {
    comp_index[static_cast<std::size_t>(ci)] = static_cast<int>(comp.vertices.size());
    comp.vertices.push_back(candidates[static_cast<std::size_t>(ci)]);
    cand_of.push_back(ci);
    used.emplace_back(comp.vertices.back().slot_angles.size(), 0);
  };
  add_vertex(first);
  for (std::size_t vid = 0; vid < comp.vertices.size(); ++vid) {
    const std::size_t n_slots = comp.vertices[vid].slot_angles.size();
    for (std::size_t k = 0; k < n_slots; k += 2) {
      if (used[vid][k]) continue;
      used[vid][k] = 1;
      const CurveVertex cv = comp.vertices[vid];
      TracedArc arc;
      arc.level = level;
      arc.start_vertex = static_cast<int>(vid);
      arc.start_slot = static_cast<int>(k);
      arc.points.push_back(cv.z);
      Complex s = cv.z + std::polar(cv.start_radius, cv.slot_angles[k]);
      if (!correct(s, level)) {
        throw NumericalError("could not start the branch leaving vertex " + where(cv.z) + " along ray " +
                             std::to_string(k));
      }
      const MarchEnd end = march(level, s, &cv, cand_of[vid], candidates, arc);
      if (comp_index[static_cast<std::size_t>(end.vertex)] < 0) add_vertex(end.vertex);
      const int vid2 = comp_index[static_cast<std::size_t>(end.vertex)];
      auto& slots2 = used[static_cast<std::size_t>(vid2)];
      const Complex at = comp.vertices[static_cast<std::size_t>(vid2)].z;
      if (end.slot % 2 == 0) {
        throw NumericalError("branch from " + where(cv.z) + " arrived at " + where(at) +
                             " along an outgoing ray (orientation mismatch)");
      }
      if (slots2[static_cast<std::size_t>(end.slot)]) {
        throw NumericalError("two branches arrived at " + where(at) + " along the same ray");
      }
      slots2[static_cast<std::size_t>(end.slot)] = 1;
      arc.end_vertex = vid2;
      arc.end_slot = end.slot;
      comp.arcs.push_back(std::move(arc));
    }
  }
  for (std::size_t vid = 0; vid < comp.vertices.size(); ++vid)
    for (std::size_t k = 0; k < used[vid].size(); ++k)
      if (!used[vid][k]) {
        throw NumericalError("incomplete branch structure at vertex " + where(comp.vertices[vid].z) + ": ray " +
                             std::to_string(k) + " has no arc");
      }
  near_critical_warnings(comp);
  return comp;
}

void Tracer::near_critical_warnings(LevelCurveComponent& comp) const {
  for (const auto& c : crit_) {
    bool on = false;
    for (const auto& v : comp.vertices) on = on || v.z == c.z;
    if (on) continue;
    double d = std::numeric_limits<double>::infinity();
    for (const auto& a : comp.arcs)
      for (const Complex z : a.points) d = std::min(d, std::abs(z - c.z));
    if (d < 10.0 * c.capture_radius) {
      std::ostringstream os;
      os << "near-critical: curve passes within " << d << " of critical point " << where(c.z)
         << " whose level is " << c.level;
      comp.warnings.push_back(os.str());
    }
  }
}

LevelCurveComponent Tracer::trace_through_vertex(const CurveVertex& v) const {
  const std::vector<CurveVertex> cands = vertices_at(v.level);
  int first = -1;
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].z == v.z) first = static_cast<int>(i);
  if (first < 0) throw UsageError("point " + where(v.z) + " is not a critical vertex of f");
  return trace_from(cands, first);
}

LevelCurveComponent Tracer::trace_component(double eps, Complex seed) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("level must be positive and finite");
  const std::vector<CurveVertex> cands = vertices_at(eps);
  Complex z = seed;
  if (!correct(z, eps)) throw NumericalError("seed " + where(seed) + " could not be corrected onto the level set");
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (std::abs(z - cands[i].z) < 2.0 * cands[i].capture_radius) return trace_from(cands, static_cast<int>(i));
  TracedArc arc;
  arc.level = eps;
  const MarchEnd end = march(eps, z, nullptr, -1, cands, arc);
  if (!end.closed) return trace_from(cands, end.vertex);
  LevelCurveComponent comp;
  comp.level = eps;
  comp.arcs.push_back(std::move(arc));
  near_critical_warnings(comp);
  return comp;
}

bool Tracer::lies_on(const SegmentIndex& index, Complex p, double eps) const {
  const SegmentIndex::Hit hit = index.nearest(p);
  if (hit.distance <= 1e-12 * scale_) return true;
  if (hit.distance > 1e-3 * scale_) return false;
  Complex q = hit.foot;
  if (!correct(q, eps)) return false;
  return std::abs(q - p) <= std::max(1e-9 * scale_, 0.1 * hit.distance);
}

// ---------------------------------------------------------------------------
// Seeds

std::vector<Complex> Tracer::find_seeds(double eps) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("level must be positive and finite");
  const double log_eps = std::log(eps);
  std::vector<Complex> seeds;
  auto s_of = [&](Complex z) { return f_->log_abs(z) - log_eps; };
  auto refine = [&](Complex a, Complex b, double sa, const std::string& origin) {
    for (int it = 0; it < 200; ++it) {
      const Complex m = 0.5 * (a + b);
      if (m == a || m == b) break;
      const double sm = s_of(m);
      if (std::isnan(sm)) break;
      if ((sm < 0.0) == (sa < 0.0)) {
        a = m;
        sa = sm;
      } else {
        b = m;
      }
    }
    Complex z = 0.5 * (a + b);
    if (!correct(z, eps)) {
      throw NumericalError("seed correction diverged for the search started at " + origin + " near " + where(z));
    }
    seeds.push_back(z);
  };

  double R = 0.0;
  if (domain_.kind == DomainSpec::Kind::WholePlane) R = 1.01 * f_->level_radius_bound(eps);

  auto ray_length = [&](Complex p, Complex e) {
    switch (domain_.kind) {
      case DomainSpec::Kind::WholePlane:
        return R + std::abs(p);
      case DomainSpec::Kind::UnitDisk: {
        const double b = dot(p, e);
        return (1.0 - 1e-9) * (-b + std::sqrt(b * b + 1.0 - std::norm(p)));
      }
      case DomainSpec::Kind::Rectangle: {
        double t = std::numeric_limits<double>::infinity();
        if (e.real() > 0.0) t = std::min(t, (domain_.x1 - p.real()) / e.real());
        if (e.real() < 0.0) t = std::min(t, (domain_.x0 - p.real()) / e.real());
        if (e.imag() > 0.0) t = std::min(t, (domain_.y1 - p.imag()) / e.imag());
        if (e.imag() < 0.0) t = std::min(t, (domain_.y0 - p.imag()) / e.imag());
        return t;
      }
    }
    return 0.0;
  };

  // Rays from every zero and pole: each bounded component of the level set
  // separates some zero or pole from the outside, so a ray crosses it.
  std::vector<Complex> anchors;
  for (const auto& r : f_->zeros_in(domain_)) anchors.push_back(r.z);
  for (const auto& r : f_->poles_in(domain_)) anchors.push_back(r.z);
  const int n_rays = 8;
  for (const Complex p : anchors) {
    for (int j = 0; j < n_rays; ++j) {
      const Complex e = std::polar(1.0, 2.0 * M_PI * j / n_rays + 0.3);
      const double r_max = ray_length(p, e);
      if (!(r_max > 0.0)) continue;
      std::vector<double> rs;
      const double r_min = std::min(1e-12 * scale_, 1e-3 * r_max);
      const int n_geo = 160, n_lin = 480;
      for (int i = 0; i <= n_geo; ++i) rs.push_back(r_min * std::pow(r_max / r_min, static_cast<double>(i) / n_geo));
      for (int i = 1; i <= n_lin; ++i) rs.push_back(r_max * i / n_lin);
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      double s_prev = std::numeric_limits<double>::quiet_NaN();
      Complex z_prev;
      for (const double r : rs) {
        const Complex z = p + r * e;
        const double s = s_of(z);
        if (std::isnan(s)) {
          s_prev = s;
          continue;
        }
        if (!std::isnan(s_prev) && ((s_prev < 0.0) != (s < 0.0))) refine(z_prev, z, s_prev, where(p));
        s_prev = s;
        z_prev = z;
      }
    }
  }

  // Line sweeps through the search box, evaluated as the sign of
  // |N|^2 - eps^2 |D|^2 with the batch kernel.
  Box box;
  switch (domain_.kind) {
    case DomainSpec::Kind::WholePlane: box = Box{-R, -R, R, R}; break;
    case DomainSpec::Kind::UnitDisk: box = Box{-1.0, -1.0, 1.0, 1.0}; break;
    case DomainSpec::Kind::Rectangle: box = Box{domain_.x0, domain_.y0, domain_.x1, domain_.y1}; break;
  }
  std::vector<double> nr, ni, dr, di;
  for (int i = f_->numerator().degree(); i >= 0; --i) {
    nr.push_back(f_->numerator().coeff(i).real());
    ni.push_back(f_->numerator().coeff(i).imag());
  }
  for (int i = f_->denominator().degree(); i >= 0; --i) {
    dr.push_back(f_->denominator().coeff(i).real());
    di.push_back(f_->denominator().coeff(i).imag());
  }
  const int n_lines = 41, n_samples = 801;
  std::vector<double> xs(n_samples), ys(n_samples), gn(n_samples), gd(n_samples);
  const double eps2 = eps * eps;
  for (int dir = 0; dir < 2; ++dir) {
    for (int j = 0; j < n_lines; ++j) {
      const double frac = (j + 0.5 + 0.0137) / n_lines;
      for (int i = 0; i < n_samples; ++i) {
        const double t = static_cast<double>(i) / (n_samples - 1);
        if (dir == 0) {
          xs[static_cast<std::size_t>(i)] = box.x0 + t * (box.x1 - box.x0);
          ys[static_cast<std::size_t>(i)] = box.y0 + frac * (box.y1 - box.y0);
        } else {
          xs[static_cast<std::size_t>(i)] = box.x0 + frac * (box.x1 - box.x0);
          ys[static_cast<std::size_t>(i)] = box.y0 + t * (box.y1 - box.y0);
        }
      }
      simd::poly_abs2_batch(nr.data(), ni.data(), nr.size(), xs.data(), ys.data(), gn.data(), xs.size());
      simd::poly_abs2_batch(dr.data(), di.data(), dr.size(), xs.data(), ys.data(), gd.data(), xs.size());
      bool have_prev = false;
      double g_prev = 0.0;
      for (int i = 0; i < n_samples; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const Complex z(xs[iu], ys[iu]);
        if (!domain_.contains(z)) {
          have_prev = false;
          continue;
        }
        const double g = gn[iu] - eps2 * gd[iu];
        if (have_prev && ((g_prev < 0.0) != (g < 0.0))) {
          const Complex zp(xs[iu - 1], ys[iu - 1]);
          const double sp = s_of(zp);
          if (!std::isnan(sp) && !std::isnan(s_of(z))) refine(zp, z, sp, "line sweep");
        }
        g_prev = g;
        have_prev = true;
      }
    }
  }
  return seeds;
}

// ---------------------------------------------------------------------------
// Whole level set

std::vector<LevelCurveComponent> Tracer::trace_level_set(double eps) const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("level must be positive and finite");
  if (domain_.kind == DomainSpec::Kind::UnitDisk && std::abs(std::log(eps)) <= tol_.vertex_tol) {
    throw UsageError("eps = 1 coincides with |f| on the unit circle");
  }
  const std::vector<CurveVertex> cands = vertices_at(eps);
  std::vector<LevelCurveComponent> comps;
  std::vector<char> done(cands.size(), 0);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (done[i]) continue;
    LevelCurveComponent comp = trace_from(cands, static_cast<int>(i));
    for (const auto& v : comp.vertices)
      for (std::size_t j = 0; j < cands.size(); ++j)
        if (cands[j].z == v.z) done[j] = 1;
    if (std::abs(comp.level - eps) > tol_.snap_tol * eps) {
      std::ostringstream os;
      os.precision(17);
      os << "level " << eps << " snapped to the critical value " << comp.level;
      comp.warnings.push_back(os.str());
    }
    comps.push_back(std::move(comp));
  }

  std::vector<SegmentIndex> indices;
  for (const auto& c : comps) indices.emplace_back(c.polylines());
  for (const Complex seed : find_seeds(eps)) {
    bool skip = false;
    for (const auto& v : cands) skip = skip || std::abs(seed - v.z) < 2.0 * v.capture_radius;
    for (std::size_t c = 0; c < comps.size() && !skip; ++c) skip = lies_on(indices[c], seed, eps);
    if (skip) continue;
    LevelCurveComponent comp = trace_component(eps, seed);
    if (!comp.vertices.empty()) continue;  // every vertex component was traced above
    indices.emplace_back(comp.polylines());
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::vector<Complex> find_seeds(const RationalFn& f, double eps, const DomainSpec& domain, const Tolerances& tol) {
  return Tracer(f, domain, tol).find_seeds(eps);
}

LevelCurveComponent trace_component(const RationalFn& f, double eps, Complex seed, const DomainSpec& domain,
                                    const Tolerances& tol) {
  return Tracer(f, domain, tol).trace_component(eps, seed);
}

std::vector<LevelCurveComponent> trace_level_set(const RationalFn& f, double eps, const DomainSpec& domain,
                                                 const Tolerances& tol) {
  return Tracer(f, domain, tol).trace_level_set(eps);
}

}  // namespace lvl
