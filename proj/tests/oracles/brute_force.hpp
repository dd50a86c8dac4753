#pragma once

// Independent reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Plain double loop; +inf when either side is empty.
double hausdorff(const std::vector<Complex>& x, const std::vector<Complex>& y);
double one_sided(const std::vector<Complex>& x, const std::vector<Complex>& y);

/// Central difference with step h.
Complex central_difference(const std::function<Complex(Complex)>& f, Complex z, double h = 1e-5);

/// Roots of z^2 + b z + c by the quadratic formula.
std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c);

/// Marching-squares rasterization of {g = 0} on an n x n grid over
/// [x0,x1] x [y0,y1]; returns one point per cell edge crossing (linear
/// interpolation) and the centers of the cells that contain a crossing.
struct Raster {
  std::vector<Complex> crossings;
  std::vector<Complex> cell_centers;
  double cell_diagonal = 0.0;
};
Raster marching_squares(const std::function<double(Complex)>& g, double x0, double y0, double x1, double y1, int n);

/// Number of connected components of {g < 0} and {g > 0} (4-connectivity)
/// on an n x n grid; the face count of a curve is the count of regions
/// its complement splits into.
struct FloodCounts {
  int negative = 0;
  int positive = 0;
};
FloodCounts flood_fill_regions(const std::function<double(Complex)>& g, double x0, double y0, double x1, double y1,
                               int n);

/// Support-function test for convex-hull membership: the largest amount by
/// which q sticks out past the points along any of `directions` unit vectors.
/// Negative means q is inside with that margin.
double hull_excess(const std::vector<Complex>& pts, Complex q, int directions = 3600);

/// Two-sided check distance between polylines and a point set: vertices of
/// the polylines to the points one way, points to the polyline segments the
/// other way. +inf when either side is empty.
double polyline_hausdorff(const std::vector<std::vector<Complex>>& lines, bool closed,
                          const std::vector<Complex>& pts);

/// Even-odd ray test against a closed ring (first point not repeated).
bool inside(const std::vector<Complex>& ring, Complex p);

}  // namespace oracle
