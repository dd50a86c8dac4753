#pragma once

#include <cstddef>

namespace lvl {

// Default tolerances. Every analysis takes a Tolerances by const reference so
// a run can override any of them from the command line.
struct Tolerances {
  double trace_tol = 1e-9;    // | |f(p)| - eps | for emitted points, scaled by max(1, eps)
  double vertex_tol = 1e-7;   // log-relative gap for a critical point to count as on-level
  double snap_tol = 1e-12;    // levels closer than this to a critical value are exact ties
  double phi_tol = 1e-8;      // power identity residual, scaled by (1 + max|f|)
  double hull_tol = 1e-8;     // Gauss-Lucas containment, scaled by the zero scale
  double angle_tol = 1e-4;    // minimum separation of incident arc tangents (rad)
  double cluster_tol = 1e-7;  // root clustering distance, scaled by root scale

  // Tracer step control, relative to the domain scale.
  double step_max = 1e-2;
  double step_min = 1e-7;
  double max_turn = 0.12;  // radians per accepted step
  std::size_t max_points = 400000;
};

}  // namespace lvl
