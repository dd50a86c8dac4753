#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/polynomial.hpp"

namespace lvl {

/// Convex hull, counterclockwise, without collinear points. One point for a
/// single distinct input, two for collinear inputs.
std::vector<Complex> convex_hull(std::vector<Complex> pts);
/// Signed distance from q to the hull: negative inside, positive outside.
/// A single-point hull gives the plain distance. A segment hull gives minus the
/// distance to the nearer endpoint for points on the segment.
double hull_signed_distance(const std::vector<Complex>& hull, Complex q);

struct HullReport {
  std::vector<Complex> zeros;
  std::vector<Complex> hull;
  std::vector<Complex> critical_points;
  double max_signed_distance = 0.0;
  double scale = 1.0;  // max(1, largest zero modulus)
  bool holds = true;   // max_signed_distance <= hull_tol * scale
};

/// Computes zeros, critical points and hull. Does not throw on a violation.
HullReport gauss_lucas_report(const Polynomial& p, const Tolerances& tol = {});
/// As above, but a critical point outside the hull is a CertificateError.
HullReport check_gauss_lucas(const Polynomial& p, const Tolerances& tol = {});

/// Outcome of replaying the level-curve proof on one critical point.
struct ReplayReport {
  bool applicable = false;
  std::string reason;
  // Normalization z -> (z - center) * rotation / radius sends the declared
  // zeros into the unit disk and the critical point onto (1, inf).
  Complex center{0.0, 0.0};
  double radius = 1.0;
  Complex rotation{1.0, 0.0};
  Complex critical_normalized{0.0, 0.0};
  double level = 0.0;  // |p| on the traced curve, in normalized coordinates
  double s = 0.0;      // common imaginary part of the two points
  Complex z1{0.0, 0.0}, z2{0.0, 0.0};  // normalized, Re z1 < Re z2, both Re > 1
  double product1 = 0.0, product2 = 0.0;
  bool inequality_holds = false;  // product1 < product2 strictly
};

/// Replays the proof mechanics for a critical point c of p. Only meaningful
/// when c lies outside the hull of `declared_zeros` (defaults to the zeros of
/// p); otherwise returns applicable = false.
ReplayReport replay_level_curve_argument(const Polynomial& p, Complex c,
                                         const std::optional<std::vector<Complex>>& declared_zeros = std::nullopt,
                                         const Tolerances& tol = {});

/// A deliberately corrupted instance: q = p (z - r) with r chosen so that
/// q'(2) = 0, where p has the given zeros inside the unit disk. The declared
/// zeros are those of p, so the critical point 2 lies outside their hull.
struct CorruptedInstance {
  Polynomial q;
  std::vector<Complex> declared_zeros;
  Complex critical{2.0, 0.0};
};
CorruptedInstance corrupted_instance(const std::vector<Complex>& zeros_in_disk);

}  // namespace lvl
