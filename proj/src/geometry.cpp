#include "levelcurve/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lvl {

void Box::add(Complex z) {
  x0 = std::min(x0, z.real());
  x1 = std::max(x1, z.real());
  y0 = std::min(y0, z.imag());
  y1 = std::max(y1, z.imag());
}

void Box::add(const Box& b) {
  if (b.empty()) return;
  add(Complex(b.x0, b.y0));
  add(Complex(b.x1, b.y1));
}

double Box::diameter() const { return empty() ? 0.0 : std::hypot(x1 - x0, y1 - y0); }

Box Box::inflated(double m) const { return Box{x0 - m, y0 - m, x1 + m, y1 + m}; }

bool Box::contains(Complex z) const {
  return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
}

Box bounding_box(std::span<const Complex> pts) {
  Box b;
  for (const Complex z : pts) b.add(z);
  return b;
}

double point_segment_distance(Complex p, Complex a, Complex b, Complex* foot) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2, 0.0, 1.0);
  const Complex q = a + t * ab;
  if (foot != nullptr) *foot = q;
  return std::abs(p - q);
}

namespace {
double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}
bool on_segment(Complex a, Complex b, Complex p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}
int sgn(double v) { return (v > 0.0) - (v < 0.0); }
}  // namespace

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  const int d1 = sgn(cross(c, d, a));
  const int d2 = sgn(cross(c, d, b));
  const int d3 = sgn(cross(a, b, c));
  const int d4 = sgn(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double signed_area(std::span<const Complex> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = ring[i];
    const Complex b = ring[(i + 1) % n];
    s += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * s;
}

int winding_number(std::span<const Complex> ring, Complex p) {
  const std::size_t n = ring.size();
  int w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = ring[i];
    const Complex b = ring[(i + 1) % n];
    if (a.imag() <= p.imag()) {
      if (b.imag() > p.imag() && cross(a, b, p) > 0.0) ++w;
    } else {
      if (b.imag() <= p.imag() && cross(a, b, p) < 0.0) --w;
    }
  }
  return w;
}

double polyline_length(std::span<const Complex> pts) {
  double s = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += std::abs(pts[i] - pts[i - 1]);
  return s;
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) a += 2.0 * M_PI;
  return a;
}

SegmentIndex::SegmentIndex(const std::vector<const Polyline*>& lines) {
  double total = 0.0;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    const Polyline& pl = *lines[l];
    for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
      segs_.push_back({pl[i], pl[i + 1], static_cast<int>(l), static_cast<int>(i)});
      box_.add(pl[i]);
      box_.add(pl[i + 1]);
      total += std::abs(pl[i + 1] - pl[i]);
    }
  }
  if (segs_.empty()) return;
  const double w = std::max(box_.x1 - box_.x0, 1e-12);
  const double h = std::max(box_.y1 - box_.y0, 1e-12);
  // About two segments per occupied cell, capped to keep the table small.
  cell_ = std::max({2.0 * total / static_cast<double>(segs_.size()), std::sqrt(w * h / 4.0e6), 1e-12});
  nx_ = static_cast<std::size_t>(std::min(2048.0, std::floor(w / cell_) + 1));
  ny_ = static_cast<std::size_t>(std::min(2048.0, std::floor(h / cell_) + 1));
  cell_ = std::max(w / static_cast<double>(nx_), h / static_cast<double>(ny_)) * (1.0 + 1e-12);
  nx_ = static_cast<std::size_t>(std::floor(w / cell_) + 1);
  ny_ = static_cast<std::size_t>(std::floor(h / cell_) + 1);
  cells_.assign(nx_ * ny_, {});
  for (std::size_t s = 0; s < segs_.size(); ++s) {
    const Seg& g = segs_[s];
    const int ix0 = clamp_x(std::min(g.a.real(), g.b.real()));
    const int ix1 = clamp_x(std::max(g.a.real(), g.b.real()));
    const int iy0 = clamp_y(std::min(g.a.imag(), g.b.imag()));
    const int iy1 = clamp_y(std::max(g.a.imag(), g.b.imag()));
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) cells_[cell_of(ix, iy)].push_back(static_cast<int>(s));
  }
}

int SegmentIndex::clamp_x(double x) const {
  const double t = std::floor((x - box_.x0) / cell_);
  return static_cast<int>(std::clamp(t, 0.0, static_cast<double>(nx_ - 1)));
}

int SegmentIndex::clamp_y(double y) const {
  const double t = std::floor((y - box_.y0) / cell_);
  return static_cast<int>(std::clamp(t, 0.0, static_cast<double>(ny_ - 1)));
}

SegmentIndex::Hit SegmentIndex::nearest(Complex p, double limit) const {
  Hit best;
  if (segs_.empty()) return best;
  const int cx = clamp_x(p.real());
  const int cy = clamp_y(p.imag());
  // Distance from p to the box, so rings are only counted once they can reach it.
  const double outside = std::hypot(std::max({box_.x0 - p.real(), 0.0, p.real() - box_.x1}),
                                    std::max({box_.y0 - p.imag(), 0.0, p.imag() - box_.y1}));
  const int max_ring = static_cast<int>(std::max(nx_, ny_));
  for (int ring = 0; ring <= max_ring; ++ring) {
    // Every segment not yet visited lies at least this far away.
    const double reach = std::max(outside, (ring - 1) * cell_);
    if (ring > 0 && (best.distance <= reach || reach > limit)) break;
    for (int iy = cy - ring; iy <= cy + ring; ++iy) {
      if (iy < 0 || iy >= static_cast<int>(ny_)) continue;
      const bool edge_row = iy == cy - ring || iy == cy + ring;
      for (int ix = cx - ring; ix <= cx + ring; ix += (edge_row ? 1 : 2 * ring)) {
        if (ix >= 0 && ix < static_cast<int>(nx_)) {
          for (const int s : cells_[cell_of(ix, iy)]) {
            const Seg& g = segs_[static_cast<std::size_t>(s)];
            Complex foot;
            const double d = point_segment_distance(p, g.a, g.b, &foot);
            if (d < best.distance) best = {d, g.line, g.index, foot};
          }
        }
        if (ring == 0) break;
      }
    }
  }
  return best;
}

bool SegmentIndex::crosses(Complex a, Complex b) const {
  if (segs_.empty()) return false;
  const int ix0 = clamp_x(std::min(a.real(), b.real()));
  const int ix1 = clamp_x(std::max(a.real(), b.real()));
  const int iy0 = clamp_y(std::min(a.imag(), b.imag()));
  const int iy1 = clamp_y(std::max(a.imag(), b.imag()));
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix)
      for (const int s : cells_[cell_of(ix, iy)]) {
        const Seg& g = segs_[static_cast<std::size_t>(s)];
        if (segments_intersect(a, b, g.a, g.b)) return true;
      }
  return false;
}

}  // namespace lvl
