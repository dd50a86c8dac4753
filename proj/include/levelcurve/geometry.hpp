#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "levelcurve/polynomial.hpp"

namespace lvl {

using Polyline = std::vector<Complex>;

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(Complex z);
  void add(const Box& b);
  bool empty() const { return !(x1 >= x0); }
  double diameter() const;
  Box inflated(double margin) const;
  bool contains(Complex z) const;
};

Box bounding_box(std::span<const Complex> pts);

double point_segment_distance(Complex p, Complex a, Complex b, Complex* foot = nullptr);
/// Proper or touching intersection of the closed segments [a,b] and [c,d].
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);
/// Shoelace signed area of a closed ring (last point need not repeat the first).
double signed_area(std::span<const Complex> ring);
/// Winding number of a closed ring around p via the crossing rule.
int winding_number(std::span<const Complex> ring, Complex p);
double polyline_length(std::span<const Complex> pts);
/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// Nearest-segment queries over a set of polylines, bucketed on a uniform grid.
class SegmentIndex {
 public:
  struct Hit {
    double distance = std::numeric_limits<double>::infinity();
    int polyline = -1;
    int segment = -1;  // segment i joins points i and i+1
    Complex foot{0.0, 0.0};
  };

  SegmentIndex() = default;
  explicit SegmentIndex(const std::vector<const Polyline*>& lines);

  bool empty() const { return segs_.empty(); }
  /// Stops searching beyond `limit`: when the true distance exceeds it, the
  /// result is some value above `limit` (infinite when nothing was seen).
  Hit nearest(Complex p, double limit = std::numeric_limits<double>::infinity()) const;
  double distance(Complex p, double limit = std::numeric_limits<double>::infinity()) const {
    return nearest(p, limit).distance;
  }
  /// True when some indexed segment meets the closed segment [a,b].
  bool crosses(Complex a, Complex b) const;

 private:
  struct Seg {
    Complex a, b;
    int line, index;
  };
  std::size_t cell_of(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx_ + static_cast<std::size_t>(ix); }
  int clamp_x(double x) const;
  int clamp_y(double y) const;

  std::vector<Seg> segs_;
  std::vector<std::vector<int>> cells_;
  Box box_;
  double cell_ = 1.0;
  std::size_t nx_ = 0, ny_ = 0;
};

}  // namespace lvl
