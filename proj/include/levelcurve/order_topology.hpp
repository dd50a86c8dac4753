#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/levelgraph.hpp"
#include "levelcurve/tracer.hpp"

namespace lvl {

/// A member of the nesting order: a traced level curve, a bounded boundary
/// component of the domain (a closed ring), or a zero or pole taken as a
/// degenerate one-point curve.
struct CurveRef {
  enum class Kind { LevelCurve, BoundaryComponent, Point };
  Kind kind = Kind::LevelCurve;
  LevelCurveComponent component;            // LevelCurve
  std::shared_ptr<const LevelGraph> graph;  // LevelCurve
  Polyline ring;                            // BoundaryComponent
  std::shared_ptr<const Polyline> closed_ring;      // ring with the first point repeated
  std::shared_ptr<const SegmentIndex> ring_index;   // over closed_ring
  Complex point{0.0, 0.0};                  // Point
  int mult = 0;                             // Point: order of the zero or pole
  bool pole = false;                        // Point
  double level = 0.0;                       // |f| on the set; 0 or inf for points

  static CurveRef level_curve(LevelCurveComponent comp, const Tolerances& tol = {});
  static CurveRef boundary(Polyline ring, double level);
  static CurveRef zero_or_pole(const RootMult& r, bool is_pole);

  bool is_critical() const { return kind == Kind::LevelCurve && !component.vertices.empty(); }
  /// Up to `count` points spread over the set.
  std::vector<Complex> samples(int count = 8) const;
  /// Every polyline point (or the single point).
  std::vector<Complex> all_points() const;
  /// Distance from z to the set; may return +inf once it exceeds `limit`.
  double distance_to(Complex z, double limit = std::numeric_limits<double>::infinity()) const;
  /// Face containing z: a face id of the graph for level curves, 0 (inside)
  /// or -1 (outside) for rings; points have only the outside face -1.
  int face_of(Complex z) const;
  bool face_is_bounded(int face) const;
  std::string describe() const;
};

/// Face of `b` that holds `a`, by a vote over spread samples of `a`. Throws
/// UsageError when the sets are closer than the trace tolerance and
/// NumericalError when the samples disagree.
int face_holding(const CurveRef& a, const CurveRef& b, const Tolerances& tol = {});
/// a < b: a lies in a bounded face of b.
bool precedes(const CurveRef& a, const CurveRef& b, const Tolerances& tol = {});

struct CriticalSetC {
  std::vector<CurveRef> members;  // critical level curves first, then boundary rings, then zeros and poles
  int curve_count() const;
};

/// Critical level curves through every critical point of f in the domain,
/// plus the zeros and poles as points.
CriticalSetC critical_level_curves(const RationalFn& f, const DomainSpec& domain, const Tolerances& tol = {});

struct OrderReport {
  std::vector<std::vector<char>> relation;  // relation[i][j] = members[i] < members[j]
  std::vector<std::pair<int, int>> hasse;   // covering pairs (lower, upper)
  int maximal = -1;
};

/// Relation matrix, strict-order checks (asymmetry, transitivity), Hasse
/// diagram, and uniqueness of the maximal element overall and inside every
/// bounded face. Violations throw CertificateError.
OrderReport order_report(const CriticalSetC& c, const Tolerances& tol = {});
/// The unique maximal member of C.
const CurveRef& maximal_component(const CriticalSetC& c, const Tolerances& tol = {});

struct Separation {
  CurveRef curve;
  int face_of_l = -1;
  int face_of_k = -1;
  bool l_in_bounded = false;
  bool k_in_bounded = false;
  double min_critical_distance = 0.0;  // from the curve to every critical point
};

/// A non-critical level curve with L in one face and every point of K in
/// another, found along the shortest segment from L to K.
Separation separating_curve(const RationalFn& f, const CurveRef& l, const std::vector<Complex>& k,
                            const DomainSpec& domain = {}, const Tolerances& tol = {});

struct Witness {
  int member = -1;  // index into C
  int face1 = -1;
  int face2 = -1;
};

/// For mutually exterior L1, L2: a member of C with L1 and L2 in distinct
/// bounded faces. Nested input is a UsageError; no witness is a CertificateError.
Witness two_curve_critical_witness(const CriticalSetC& c, const CurveRef& l1, const CurveRef& l2,
                                   const Tolerances& tol = {});

}  // namespace lvl
