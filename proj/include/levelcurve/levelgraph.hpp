#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/geometry.hpp"
#include "levelcurve/tracer.hpp"

namespace lvl {

struct GraphVertex {
  int id = 0;
  Complex z{0.0, 0.0};
  int mult = 0;
  int degree = 0;
};

struct GraphEdge {
  int id = 0;
  int v_from = -1;  // -1 for a closed curve without vertices
  int v_to = -1;
  bool closed = false;
  int polyline = 0;  // index of the arc in the source component
};

/// A face with the face on the left of its boundary walk. Dart 2e runs along
/// edge e from v_from to v_to, dart 2e+1 runs back.
struct GraphFace {
  int id = 0;
  bool bounded = false;
  std::vector<int> darts;
  Polyline ring;  // boundary walk as a closed ring (first point not repeated)
  double area = 0.0;
  Complex rep{0.0, 0.0};
};

/// Embedded planar graph of one level curve.
class LevelGraph {
 public:
  double level = 0.0;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::vector<GraphFace> faces;
  std::vector<Polyline> polylines;  // copies of the component arcs, edge i uses polylines[edges[i].polyline]

  int bounded_face_count() const;
  int total_face_count() const { return static_cast<int>(faces.size()); }
  int unbounded_face() const;
  int sum_mult() const;
  /// Face whose region contains z. Throws UsageError for points on the curve.
  int face_of_point(Complex z) const;
  double distance_to_curve(Complex z, double limit = std::numeric_limits<double>::infinity()) const {
    return index_.distance(z, limit);
  }
  const SegmentIndex& index() const { return index_; }
  double margin() const { return margin_; }

  /// Degree law, two-distinct-faces law, face-count formula, Euler relation
  /// and admissibility. Throws CertificateError naming the first violation.
  void check_invariants() const;

 private:
  friend LevelGraph build_graph(const LevelCurveComponent& comp, const Tolerances& tol);
  SegmentIndex index_;
  double margin_ = 0.0;
};

LevelGraph build_graph(const LevelCurveComponent& comp, const Tolerances& tol = {});

struct FaceCounts {
  int bounded = 0;
  int total = 0;
};
/// Counts from the face enumeration; throws CertificateError when they
/// disagree with sum(mult) + 1 bounded / sum(mult) + 2 total.
FaceCounts face_count(const LevelGraph& g);

/// Zeros and poles of f in the domain grouped by the face that contains
/// them. Throws CertificateError when a bounded face holds none.
std::map<int, std::vector<RootMult>> zeros_per_face(const LevelGraph& g, const RationalFn& f,
                                                    const DomainSpec& domain = {});

}  // namespace lvl
