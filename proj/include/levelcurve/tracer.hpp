#pragma once

#include <string>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/geometry.hpp"

namespace lvl {

/// One traced edge of a level curve, oriented so that arg f increases.
struct TracedArc {
  Polyline points;
  int start_vertex = -1;  // index into LevelCurveComponent::vertices
  int end_vertex = -1;
  int start_slot = -1;    // index of the outgoing ray at the vertex
  int end_slot = -1;
  bool closed = false;
  double level = 0.0;
  double arg_change = 0.0;  // total increase of arg f along the arc
};

/// A critical point of f together with its local ray structure. The level
/// set |f| = |f(c)| leaves c along 2(mult+1) equally spaced rays; rays with
/// even index carry increasing arg f away from c.
struct CurveVertex {
  Complex z{0.0, 0.0};
  int mult = 1;
  double level = 0.0;                // |f(z)|
  Complex value{0.0, 0.0};           // f(z)
  double start_radius = 0.0;         // distance of the first traced point
  double capture_radius = 0.0;
  std::vector<double> slot_angles;   // size 2(mult+1)
};

struct LevelCurveComponent {
  std::vector<TracedArc> arcs;
  std::vector<CurveVertex> vertices;
  double level = 0.0;
  std::vector<std::string> warnings;

  bool is_simple_closed() const { return vertices.empty(); }
  Box bbox() const;
  std::vector<Complex> sample_points() const;
  std::vector<const Polyline*> polylines() const;
  /// Longest polyline segment; bounds the discretization error of sampled distances.
  double max_segment() const;
  /// Total increase of arg f over the whole component.
  double total_arg_change() const;
};

/// Holds a pointer to f: the RationalFn must outlive the tracer.
class Tracer {
 public:
  Tracer(const RationalFn& f, const DomainSpec& domain, const Tolerances& tol = {});

  const RationalFn& fn() const { return *f_; }
  const DomainSpec& domain() const { return domain_; }
  const Tolerances& tolerances() const { return tol_; }
  double scale() const { return scale_; }
  /// Critical points of f in the domain that are neither zeros nor poles.
  const std::vector<CurveVertex>& critical_vertices() const { return crit_; }
  /// Critical vertices whose level matches eps within vertex_tol.
  std::vector<CurveVertex> vertices_at(double eps) const;

  /// Points on E_{f,eps}, at least one per component.
  std::vector<Complex> find_seeds(double eps) const;
  /// The component of E_{f,eps} through `seed` (corrected onto the level).
  LevelCurveComponent trace_component(double eps, Complex seed) const;
  /// The critical level curve through the critical vertex `v`.
  LevelCurveComponent trace_through_vertex(const CurveVertex& v) const;
  /// All components of E_{f,eps} in the domain.
  std::vector<LevelCurveComponent> trace_level_set(double eps) const;

  /// Newton correction onto |f| = eps along the gradient of log|f|.
  bool correct(Complex& z, double eps, int* iterations = nullptr) const;
  /// True when the point p of E_{f,eps} lies on the traced component: its
  /// nearest polyline point corrects back onto p.
  bool lies_on(const SegmentIndex& index, Complex p, double eps) const;
  double level_tolerance(double eps) const { return tol_.trace_tol * std::max(1.0, eps); }
  /// Relative rounding noise of evaluating f at z.
  double relative_noise(Complex z) const;

 private:
  struct MarchEnd {
    bool closed = false;
    int vertex = -1;  // index into the candidate list passed to march
    int slot = -1;
  };

  MarchEnd march(double level, Complex start, const CurveVertex* from, int from_index,
                 const std::vector<CurveVertex>& candidates, TracedArc& arc) const;
  double escape_radius(double level) const;
  Complex tangent(Complex z) const;
  double step_limit(Complex z) const;
  void check_position(Complex z, double escape) const;
  LevelCurveComponent trace_from(const std::vector<CurveVertex>& candidates, int first) const;
  void near_critical_warnings(LevelCurveComponent& comp) const;

  const RationalFn* f_;
  DomainSpec domain_;
  Tolerances tol_;
  double scale_ = 1.0;
  double h_max_ = 1e-2;
  double h_min_ = 1e-7;
  std::vector<CurveVertex> crit_;
};

// Free-function forms of the tracer entry points.
std::vector<Complex> find_seeds(const RationalFn& f, double eps, const DomainSpec& domain, const Tolerances& tol = {});
LevelCurveComponent trace_component(const RationalFn& f, double eps, Complex seed, const DomainSpec& domain = {},
                                    const Tolerances& tol = {});
std::vector<LevelCurveComponent> trace_level_set(const RationalFn& f, double eps, const DomainSpec& domain = {},
                                                 const Tolerances& tol = {});

}  // namespace lvl
