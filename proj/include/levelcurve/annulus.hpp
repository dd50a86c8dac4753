#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/order_topology.hpp"

namespace lvl {

struct AnnulusOptions {
  int grid = 160;             // mesh cells along the longer side of the region box
  int max_refinements = 2;    // grid doublings when a mesh edge turns arg f by pi/4 or more
  int boundary_samples = 48;  // boundary points checked for continuous extension
  int threads = 1;
};

/// Regular grid restricted to the interior of a region, 4-neighbour graph.
struct RegionMesh {
  double x0 = 0.0, y0 = 0.0, h = 0.0;
  int nx = 0, ny = 0;
  std::vector<int> node_of_cell;  // -1 where the grid point is not a node
  std::vector<Complex> w;
  std::vector<Complex> fw;
  std::vector<std::array<int, 4>> nbr;  // -1 where absent
  double inner_clearance = 0.0;         // excluded radius around a point inner boundary

  int nearest_node(Complex z) const;
};

struct PhiGrid {
  int root = -1;
  Complex z0{0.0, 0.0};        // basepoint on the mid-level curve, f(z0) > 0
  std::vector<double> alpha;   // continuous arg f along a BFS spanning tree
  std::vector<double> alpha_dfs;
  std::vector<Complex> phi;    // |f|^(1/N) exp(i alpha / N)
  double max_edge_increment = 0.0;
  double max_path_discrepancy = 0.0;  // distance of alpha - alpha_dfs from 2 pi N Z
  int loops_detected = 0;             // nodes where the two tree paths wind around the hole
  int unreached = 0;                  // nodes not connected to the root (dropped)
  int bridges = 0;                    // straight-segment joins between split parts of the mesh graph
};

struct AnnularRegion {
  int id = 0;
  int inner_member = -1;  // index into C
  int outer_member = -1;  // index into C, -1 for the domain boundary
  int outer_face = -1;    // face of the outer member holding the region
  std::shared_ptr<const CurveRef> inner, outer;
  double eps1 = 0.0, eps2 = 0.0;  // |f| on the inner and outer boundary
  int N = 0, M = 0;
  std::vector<double> winding_levels;
  std::vector<double> winding_turns;  // arg change / 2 pi at each level
  int enclosed_zeros = 0, enclosed_poles = 0;
  double mid_level = 0.0;
  Polyline mid_curve;
  RegionMesh mesh;
  PhiGrid phi;

  bool contains(Complex w) const;
};

struct PhiCertificate {
  double max_power_residual = 0.0;  // max |phi^N - f| over the mesh
  double power_bound = 0.0;         // phi_tol (1 + max |f|)
  double min_abs_phi = 0.0, max_abs_phi = 0.0;
  double r1 = 0.0, r2 = 0.0;        // eps1^(1/N), eps2^(1/N) sorted
  int injectivity_violations = 0;
  int injectivity_unresolved = 0;  // nodes too flat to separate at 10 phi_tol
  double coverage_gap = 0.0, coverage_bound = 0.0;
  int boundary_checked = 0, boundary_skipped = 0, boundary_failed = 0;
  double level_image_spread = 0.0;  // relative spread of |phi| along the mid-level curve
  bool power_ok = false, annulus_ok = false, injective_ok = false, coverage_ok = false;
  bool path_ok = false, boundary_ok = false, level_ok = false;
  bool pass = false;
};

struct Decomposition {
  CriticalSetC c;
  OrderReport order;
  std::shared_ptr<const CurveRef> outer_boundary;
  std::vector<AnnularRegion> regions;
  std::vector<PhiCertificate> certificates;
};

/// Components of G minus C with winding numbers, phi grids and certificates.
Decomposition decompose(const RationalFn& f, const DomainSpec& domain, const Tolerances& tol = {},
                        const AnnulusOptions& opts = {});

/// Traces level curves at three levels inside the region, sets N, M and the
/// enclosed zero and pole counts, and returns N.
int winding_N(const RationalFn& f, AnnularRegion& region, const DomainSpec& domain, const Tolerances& tol = {});
/// Fills region.phi. Returns false when some mesh edge turns arg f by pi/4 or more.
bool build_phi(const RationalFn& f, AnnularRegion& region);
/// phi continued from the nearest mesh node to z along a straight path.
Complex phi_at(const RationalFn& f, const AnnularRegion& region, Complex z);
/// Checks the power identity, annulus containment, injectivity, coverage,
/// path independence, level images and boundary extension. Throws
/// CertificateError on failure when `strict` is set.
PhiCertificate verify_phi(const RationalFn& f, const AnnularRegion& region, const Tolerances& tol = {},
                          const AnnulusOptions& opts = {}, bool strict = true);

}  // namespace lvl
