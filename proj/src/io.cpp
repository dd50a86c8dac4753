#include "levelcurve/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace lvl::io {

Json number(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json complex(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json points(const Polyline& pts) {
  Json a = Json::array();
  for (const Complex z : pts) a.push_back(complex(z));
  return a;
}

Json to_json(const Tolerances& t) {
  return Json{{"trace", t.trace_tol},   {"vertex", t.vertex_tol}, {"snap", t.snap_tol},
              {"phi", t.phi_tol},       {"hull", t.hull_tol},     {"angle", t.angle_tol},
              {"cluster", t.cluster_tol}, {"step-max", t.step_max}, {"step-min", t.step_min},
              {"max-turn", t.max_turn}};
}

Json to_json(const DomainSpec& d) {
  Json j{{"spec", d.to_string()}};
  if (d.outer_level) j["outer_level"] = number(*d.outer_level);
  return j;
}

Json to_json(const LevelCurveComponent& comp) {
  Json j;
  j["level"] = number(comp.level);
  Json vs = Json::array();
  for (const CurveVertex& v : comp.vertices)
    vs.push_back({{"z", complex(v.z)}, {"mult", v.mult}, {"level", number(v.level)}});
  j["vertices"] = std::move(vs);
  Json arcs = Json::array();
  for (const TracedArc& a : comp.arcs) {
    arcs.push_back({{"start_vertex", a.start_vertex},
                    {"end_vertex", a.end_vertex},
                    {"closed", a.closed},
                    {"arg_change", number(a.arg_change)},
                    {"points", points(a.points)}});
  }
  j["arcs"] = std::move(arcs);
  j["warnings"] = comp.warnings;
  return j;
}

Json to_json(const LevelGraph& g) {
  Json j;
  j["level"] = number(g.level);
  Json vs = Json::array();
  for (const GraphVertex& v : g.vertices)
    vs.push_back({{"id", v.id}, {"re", number(v.z.real())}, {"im", number(v.z.imag())}, {"mult", v.mult},
                  {"degree", v.degree}});
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const GraphEdge& e : g.edges)
    es.push_back({{"id", e.id}, {"v_from", e.v_from}, {"v_to", e.v_to}, {"closed", e.closed},
                  {"polyline_id", e.polyline}});
  j["edges"] = std::move(es);
  Json fs = Json::array();
  for (const GraphFace& f : g.faces) {
    // Darts 2e and 2e+1 run along edge e forwards and backwards; the cycle
    // lists edge ids, negated (minus one) for backward traversal.
    Json cycle = Json::array();
    for (const int d : f.darts) cycle.push_back(d % 2 == 0 ? d / 2 : -(d / 2) - 1);
    fs.push_back({{"id", f.id},
                  {"bounded", f.bounded},
                  {"edge_cycle", std::move(cycle)},
                  {"rep_re", number(f.rep.real())},
                  {"rep_im", number(f.rep.imag())},
                  {"area", number(f.area)}});
  }
  j["faces"] = std::move(fs);
  j["summary"] = {{"V", g.vertices.size()},
                  {"E", g.edges.size()},
                  {"bounded_faces", g.bounded_face_count()},
                  {"faces", g.total_face_count()},
                  {"sum_mult", g.sum_mult()}};
  return j;
}

Json to_json(const HullReport& r) {
  Json zeros = Json::array(), crit = Json::array();
  for (const Complex z : r.zeros) zeros.push_back(complex(z));
  for (const Complex z : r.critical_points) crit.push_back(complex(z));
  return Json{{"zeros", std::move(zeros)},
              {"hull", points(r.hull)},
              {"critical_points", std::move(crit)},
              {"max_signed_distance", number(r.max_signed_distance)},
              {"scale", number(r.scale)},
              {"holds", r.holds}};
}

Json to_json(const ReplayReport& r) {
  Json j{{"applicable", r.applicable}, {"reason", r.reason}};
  if (!r.applicable) return j;
  j["center"] = complex(r.center);
  j["radius"] = number(r.radius);
  j["rotation"] = complex(r.rotation);
  j["critical_normalized"] = complex(r.critical_normalized);
  j["level"] = number(r.level);
  j["s"] = number(r.s);
  j["z1"] = complex(r.z1);
  j["z2"] = complex(r.z2);
  j["product1"] = number(r.product1);
  j["product2"] = number(r.product2);
  j["inequality_holds"] = r.inequality_holds;
  return j;
}

Json to_json(const ContinuityCertificate& c) {
  Json samples = Json::array();
  for (const ContinuitySample& s : c.samples)
    samples.push_back({{"zeta", number(s.zeta)}, {"d_check", number(s.d_check)}, {"curves", s.curves}});
  return Json{{"eps", number(c.eps)},
              {"delta", number(c.delta)},
              {"eta", number(c.eta)},
              {"samples", std::move(samples)},
              {"discretization", number(c.discretization)},
              {"trials", c.trials},
              {"pass", c.pass}};
}

Json to_json(const CurveRef& m) {
  Json j;
  switch (m.kind) {
    case CurveRef::Kind::LevelCurve: {
      j["kind"] = m.is_critical() ? "critical_level_curve" : "level_curve";
      j["level"] = number(m.level);
      Json vs = Json::array();
      for (const CurveVertex& v : m.component.vertices) vs.push_back({{"z", complex(v.z)}, {"mult", v.mult}});
      j["vertices"] = std::move(vs);
      const Box b = m.component.bbox();
      j["bbox"] = {number(b.x0), number(b.y0), number(b.x1), number(b.y1)};
      break;
    }
    case CurveRef::Kind::BoundaryComponent:
      j["kind"] = "boundary";
      j["level"] = number(m.level);
      j["points"] = m.ring.size();
      break;
    case CurveRef::Kind::Point:
      j["kind"] = m.pole ? "pole" : "zero";
      j["z"] = complex(m.point);
      j["mult"] = m.mult;
      break;
  }
  j["describe"] = m.describe();
  return j;
}

Json to_json(const CriticalSetC& c, const OrderReport& order) {
  Json members = Json::array();
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    Json m = to_json(c.members[i]);
    m["id"] = i;
    members.push_back(std::move(m));
  }
  Json hasse = Json::array();
  for (const auto& [lo, hi] : order.hasse) hasse.push_back({lo, hi});
  return Json{{"members", std::move(members)}, {"hasse", std::move(hasse)}, {"maximal", order.maximal}};
}

Json to_json(const AnnularRegion& r, const PhiCertificate& cert) {
  Json j;
  j["id"] = r.id;
  j["inner_member"] = r.inner_member;
  j["outer_member"] = r.outer_member;
  j["inner"] = r.inner ? r.inner->describe() : "";
  j["outer"] = r.outer ? r.outer->describe() : "";
  j["eps1"] = number(r.eps1);
  j["eps2"] = number(r.eps2);
  j["N"] = r.N;
  j["M"] = r.M;
  j["enclosed_zeros"] = r.enclosed_zeros;
  j["enclosed_poles"] = r.enclosed_poles;
  Json turns = Json::array();
  for (std::size_t k = 0; k < r.winding_levels.size() && k < r.winding_turns.size(); ++k)
    turns.push_back({{"level", number(r.winding_levels[k])}, {"turns", number(r.winding_turns[k])}});
  j["winding"] = std::move(turns);
  j["basepoint"] = complex(r.phi.z0);
  j["mesh"] = {{"h", number(r.mesh.h)},
               {"nodes", r.mesh.w.size()},
               {"unreached", r.phi.unreached},
               {"bridges", r.phi.bridges},
               {"max_edge_increment", number(r.phi.max_edge_increment)},
               {"max_path_discrepancy", number(r.phi.max_path_discrepancy)},
               {"loops_detected", r.phi.loops_detected}};
  j["max_power_residual"] = number(cert.max_power_residual);
  j["certificate"] = {{"power_bound", number(cert.power_bound)},
                      {"min_abs_phi", number(cert.min_abs_phi)},
                      {"max_abs_phi", number(cert.max_abs_phi)},
                      {"r1", number(cert.r1)},
                      {"r2", number(cert.r2)},
                      {"injectivity_violations", cert.injectivity_violations},
                      {"injectivity_unresolved", cert.injectivity_unresolved},
                      {"coverage_gap", number(cert.coverage_gap)},
                      {"coverage_bound", number(cert.coverage_bound)},
                      {"boundary_checked", cert.boundary_checked},
                      {"boundary_skipped", cert.boundary_skipped},
                      {"boundary_failed", cert.boundary_failed},
                      {"level_image_spread", number(cert.level_image_spread)},
                      {"power_ok", cert.power_ok},
                      {"annulus_ok", cert.annulus_ok},
                      {"injective_ok", cert.injective_ok},
                      {"coverage_ok", cert.coverage_ok},
                      {"path_ok", cert.path_ok},
                      {"boundary_ok", cert.boundary_ok},
                      {"level_ok", cert.level_ok},
                      {"pass", cert.pass}};
  return j;
}

Json to_json(const Decomposition& d) {
  Json j;
  j["order"] = to_json(d.c, d.order);
  j["outer_boundary"] = d.outer_boundary ? d.outer_boundary->describe() : "";
  Json regions = Json::array();
  for (std::size_t i = 0; i < d.regions.size(); ++i)
    regions.push_back(to_json(d.regions[i], i < d.certificates.size() ? d.certificates[i] : PhiCertificate{}));
  j["regions"] = std::move(regions);
  return j;
}

namespace {
std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}
}  // namespace

void write_polyline_csv(std::ostream& os, const std::vector<LevelCurveComponent>& comps) {
  os << "component_id,arc_id,re,im\n";
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t a = 0; a < comps[c].arcs.size(); ++a)
      for (const Complex z : comps[c].arcs[a].points)
        os << c << ',' << a << ',' << fmt(z.real()) << ',' << fmt(z.imag()) << '\n';
}

void write_phi_csv(std::ostream& os, const Decomposition& d) {
  os << "region_id,w_re,w_im,phi_re,phi_im\n";
  for (const AnnularRegion& r : d.regions)
    for (std::size_t k = 0; k < r.mesh.w.size() && k < r.phi.phi.size(); ++k) {
      const Complex p = r.phi.phi[k];
      if (std::isnan(p.real())) continue;
      os << r.id << ',' << fmt(r.mesh.w[k].real()) << ',' << fmt(r.mesh.w[k].imag()) << ',' << fmt(p.real()) << ','
         << fmt(p.imag()) << '\n';
    }
}

void add_component(SvgScene& scene, const LevelCurveComponent& comp) {
  for (const TracedArc& a : comp.arcs) {
    Polyline p = a.points;
    if (a.closed && !p.empty()) p.push_back(p.front());
    scene.curves.push_back(std::move(p));
  }
  for (const CurveVertex& v : comp.vertices) scene.marks.push_back(v.z);
}

std::string render_svg(const SvgScene& scene, int size) {
  Box box;
  for (const auto& p : scene.shaded) box.add(bounding_box(p));
  for (const auto& p : scene.curves) box.add(bounding_box(p));
  for (const Complex z : scene.marks) box.add(z);
  if (box.empty()) box = Box{-1.0, -1.0, 1.0, 1.0};
  const double span = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-12}) * 1.1;
  const double cx = 0.5 * (box.x0 + box.x1), cy = 0.5 * (box.y0 + box.y1);
  const double s = size / span;
  auto px = [&](Complex z) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << (z.real() - cx) * s + 0.5 * size << ','
       << (cy - z.imag()) * s + 0.5 * size;
    return os.str();
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& ring : scene.shaded) {
    os << "<polygon fill=\"#4a7fb5\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
    for (const Complex z : ring) os << px(z) << ' ';
    os << "\"/>\n";
  }
  for (const auto& line : scene.curves) {
    os << "<polyline fill=\"none\" stroke=\"#1b2a3a\" stroke-width=\"1\" points=\"";
    for (const Complex z : line) os << px(z) << ' ';
    os << "\"/>\n";
  }
  for (const Complex z : scene.marks) {
    const std::string p = px(z);
    const auto comma = p.find(',');
    os << "<circle cx=\"" << p.substr(0, comma) << "\" cy=\"" << p.substr(comma + 1)
       << "\" r=\"3\" fill=\"#c0392b\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lvl::io
