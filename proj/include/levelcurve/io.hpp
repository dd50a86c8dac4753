#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "levelcurve/annulus.hpp"
#include "levelcurve/gauss_lucas.hpp"
#include "levelcurve/levelgraph.hpp"
#include "levelcurve/metrics.hpp"
#include "levelcurve/order_topology.hpp"
#include "levelcurve/tracer.hpp"

namespace lvl::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "levelcurve/1";

/// Finite numbers as JSON numbers, infinities as the strings "inf" / "-inf",
/// NaN as null.
Json number(double x);
/// [re, im]
Json complex(Complex z);
Json points(const Polyline& pts);

Json to_json(const Tolerances& tol);
Json to_json(const DomainSpec& d);
Json to_json(const LevelCurveComponent& comp);
/// {level, vertices, edges, faces} plus a V/E/face summary.
Json to_json(const LevelGraph& g);
Json to_json(const HullReport& r);
Json to_json(const ReplayReport& r);
Json to_json(const ContinuityCertificate& c);
Json to_json(const CurveRef& m);
/// The members of C, the Hasse diagram and the maximal member.
Json to_json(const CriticalSetC& c, const OrderReport& order);
Json to_json(const AnnularRegion& r, const PhiCertificate& cert);
Json to_json(const Decomposition& d);

/// One row per point: component_id,arc_id,re,im
void write_polyline_csv(std::ostream& os, const std::vector<LevelCurveComponent>& comps);
/// One row per mesh node with a phi value: region_id,w_re,w_im,phi_re,phi_im
void write_phi_csv(std::ostream& os, const Decomposition& d);

/// Static picture: shaded rings under stroked polylines, dots for marks.
struct SvgScene {
  std::vector<Polyline> shaded;  // closed rings, drawn filled
  std::vector<Polyline> curves;  // open polylines
  std::vector<Complex> marks;
};
std::string render_svg(const SvgScene& scene, int size = 800);
void add_component(SvgScene& scene, const LevelCurveComponent& comp);

}  // namespace lvl::io
