#include "levelcurve/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "levelcurve/annulus.hpp"
#include "levelcurve/corpus.hpp"
#include "levelcurve/error.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/gauss_lucas.hpp"
#include "levelcurve/io.hpp"
#include "levelcurve/levelgraph.hpp"
#include "levelcurve/metrics.hpp"
#include "levelcurve/order_topology.hpp"
#include "levelcurve/tracer.hpp"

namespace lvl {
namespace {

using io::Json;

double* tolerance_slot(Tolerances& t, const std::string& name) {
  static const std::map<std::string, double Tolerances::*> slots{
      {"trace", &Tolerances::trace_tol},     {"vertex", &Tolerances::vertex_tol}, {"snap", &Tolerances::snap_tol},
      {"phi", &Tolerances::phi_tol},         {"hull", &Tolerances::hull_tol},     {"angle", &Tolerances::angle_tol},
      {"cluster", &Tolerances::cluster_tol}, {"step-max", &Tolerances::step_max}, {"step-min", &Tolerances::step_min},
      {"max-turn", &Tolerances::max_turn}};
  const auto it = slots.find(name);
  return it == slots.end() ? nullptr : &(t.*(it->second));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
  if (!f) throw UsageError("write failed for " + path);
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  if (!std::isfinite(*v) || *v <= 0.0) throw UsageError(std::string(flag) + " must be positive and finite");
  return *v;
}

struct Session {
  const RunConfig& cfg;
  Tolerances tol;
  RationalFn f;
  DomainSpec domain;
  Json doc;
  int status = 0;

  explicit Session(const RunConfig& c) : cfg(c) {}

  void load_function() {
    if (cfg.fn.empty()) throw UsageError("missing --fn");
    RootOptions ro;
    ro.cluster_tol = tol.cluster_tol;
    f = parse_function(cfg.fn, ro);
    domain = parse_domain(cfg.domain);
    if (cfg.outer_level) domain.outer_level = require(cfg.outer_level, "--outer-level");
    validate_domain(f, domain);
    doc["fn"] = cfg.fn;
    doc["domain"] = io::to_json(domain);
  }

  void fail(int code) { status = std::max(status, code); }

  void svg(const io::SvgScene& scene) const {
    if (!cfg.svg.empty()) write_text(cfg.svg, io::render_svg(scene));
  }

  void trace() {
    load_function();
    const double eps = require(cfg.eps, "--eps");
    const Tracer tracer(f, domain, tol);
    const auto comps = tracer.trace_level_set(eps);
    double worst = 0.0;
    Json list = Json::array();
    io::SvgScene scene;
    for (const auto& c : comps) {
      for (const auto& a : c.arcs)
        for (const Complex z : a.points) worst = std::max(worst, std::abs(f.abs(z) - eps));
      list.push_back(io::to_json(c));
      io::add_component(scene, c);
    }
    doc["eps"] = eps;
    doc["max_level_residual"] = io::number(worst);
    doc["level_bound"] = tracer.level_tolerance(eps);
    doc["components"] = std::move(list);
    if (worst > tracer.level_tolerance(eps)) fail(3);
    if (!cfg.csv.empty()) {
      std::ofstream os(cfg.csv, std::ios::binary);
      if (!os) throw UsageError("cannot write " + cfg.csv);
      io::write_polyline_csv(os, comps);
    }
    svg(scene);
  }

  void graph() {
    load_function();
    const double eps = require(cfg.eps, "--eps");
    const auto comps = Tracer(f, domain, tol).trace_level_set(eps);
    Json list = Json::array();
    io::SvgScene scene;
    for (const auto& c : comps) {
      const LevelGraph g = build_graph(c, tol);
      g.check_invariants();
      face_count(g);
      Json jg = io::to_json(g);
      Json held = Json::object();
      for (const auto& [face, pts] : zeros_per_face(g, f, domain)) {
        Json zs = Json::array();
        for (const auto& z : pts) zs.push_back({{"z", io::complex(z.z)}, {"mult", z.mult}});
        held[std::to_string(face)] = std::move(zs);
      }
      jg["zeros_per_face"] = std::move(held);
      list.push_back(std::move(jg));
      for (const auto& face : g.faces)
        if (face.bounded) scene.shaded.push_back(face.ring);
      io::add_component(scene, c);
    }
    doc["eps"] = eps;
    doc["graphs"] = std::move(list);
    svg(scene);
  }

  void gauss_lucas() {
    std::vector<Polynomial> polys;
    if (cfg.corpus > 0) {
      Corpus corpus(cfg.seed);
      for (int k = 0; k < cfg.corpus; ++k) polys.push_back(corpus.unit_box(corpus.integer(2, 10)));
      doc["corpus"] = {{"count", cfg.corpus}, {"seed", cfg.seed}};
    } else {
      const std::string spec = cfg.poly.empty() ? cfg.fn : cfg.poly;
      if (spec.empty()) throw UsageError("gauss-lucas needs --poly or --corpus");
      const RationalFn g = parse_function(spec);
      if (g.kind() != RationalFn::Kind::Polynomial) throw UsageError("gauss-lucas takes a polynomial");
      polys.push_back(g.numerator());
      doc["poly"] = spec;
    }
    Json reports = Json::array();
    bool all = true;
    for (const Polynomial& p : polys) {
      const HullReport r = gauss_lucas_report(p, tol);
      all = all && r.holds;
      reports.push_back(io::to_json(r));
    }
    doc["reports"] = std::move(reports);
    doc["all_hold"] = all;
    if (!all) fail(3);
  }

  void continuity() {
    load_function();
    const double eps = require(cfg.eps, "--eps");
    const double delta = require(cfg.delta, "--delta");
    ContinuityOptions opts;
    opts.threads = cfg.threads;
    const auto comps = Tracer(f, domain, tol).trace_level_set(eps);
    Json certs = Json::array();
    bool all = true;
    for (const auto& c : comps) {
      const ContinuityCertificate cert = continuity_probe(f, eps, delta, domain, c, tol, opts);
      all = all && cert.pass;
      certs.push_back(io::to_json(cert));
    }
    doc["eps"] = eps;
    doc["delta"] = delta;
    doc["certificates"] = std::move(certs);
    doc["pass"] = all;
    if (!all) fail(3);
  }

  void order() {
    load_function();
    const CriticalSetC c = critical_level_curves(f, domain, tol);
    const OrderReport rep = order_report(c, tol);
    doc["order"] = io::to_json(c, rep);
    io::SvgScene scene;
    for (const auto& m : c.members) {
      if (m.kind == CurveRef::Kind::LevelCurve) io::add_component(scene, m.component);
      if (m.kind == CurveRef::Kind::Point) scene.marks.push_back(m.point);
    }
    svg(scene);
  }

  void decompose_cmd() {
    load_function();
    AnnulusOptions opts;
    opts.threads = cfg.threads;
    const Decomposition d = decompose(f, domain, tol, opts);
    doc["decomposition"] = io::to_json(d);
    if (!cfg.emit_phi.empty()) {
      std::ofstream os(cfg.emit_phi, std::ios::binary);
      if (!os) throw UsageError("cannot write " + cfg.emit_phi);
      io::write_phi_csv(os, d);
    }
    io::SvgScene scene;
    for (const auto& m : d.c.members)
      if (m.kind == CurveRef::Kind::LevelCurve) io::add_component(scene, m.component);
    for (const auto& r : d.regions) scene.shaded.push_back(r.mid_curve);
    svg(scene);
  }

  // Each check records pass, fail or skipped; a usage error inside a check
  // means its preconditions do not hold for this input.
  void verify_all() {
    load_function();
    const double eps = require(cfg.eps, "--eps");
    const double delta = cfg.delta ? require(cfg.delta, "--delta") : 0.1;
    doc["eps"] = eps;
    doc["delta"] = delta;
    Json checks = Json::array();
    auto check = [&](const std::string& name, const std::function<Json()>& body) {
      Json entry{{"name", name}};
      try {
        Json detail = body();
        if (detail.contains("skipped")) {
          entry["status"] = "skipped";
          entry["detail"] = detail["skipped"];
        } else {
          const bool ok = detail.value("pass", true);
          entry["status"] = ok ? "pass" : "fail";
          entry["detail"] = std::move(detail);
          if (!ok) fail(3);
        }
      } catch (const UsageError& e) {
        entry["status"] = "skipped";
        entry["detail"] = e.what();
      } catch (const Error& e) {
        entry["status"] = "fail";
        entry["detail"] = e.what();
        fail(e.exit_code());
      }
      checks.push_back(std::move(entry));
    };

    const Tracer tracer(f, domain, tol);
    std::vector<LevelCurveComponent> comps;
    check("level_set", [&] {
      comps = tracer.trace_level_set(eps);
      double worst = 0.0;
      for (const auto& c : comps)
        for (const auto& a : c.arcs)
          for (const Complex z : a.points) worst = std::max(worst, std::abs(f.abs(z) - eps));
      return Json{{"components", comps.size()},
                  {"max_level_residual", worst},
                  {"pass", worst <= tracer.level_tolerance(eps) && !comps.empty()}};
    });
    check("level_graph", [&] {
      Json counts = Json::array();
      for (const auto& c : comps) {
        const LevelGraph g = build_graph(c, tol);
        g.check_invariants();
        const FaceCounts fc = face_count(g);
        zeros_per_face(g, f, domain);
        counts.push_back({{"V", g.vertices.size()}, {"E", g.edges.size()}, {"bounded_faces", fc.bounded},
                          {"sum_mult", g.sum_mult()}});
      }
      return Json{{"graphs", std::move(counts)}};
    });
    check("gauss_lucas", [&] {
      if (f.kind() != RationalFn::Kind::Polynomial) return Json{{"skipped", "not a polynomial"}};
      const HullReport r = gauss_lucas_report(f.numerator(), tol);
      return Json{{"max_signed_distance", r.max_signed_distance}, {"scale", r.scale}, {"pass", r.holds}};
    });
    check("continuity", [&] {
      ContinuityOptions opts;
      opts.threads = cfg.threads;
      Json certs = Json::array();
      bool ok = !comps.empty();
      for (const auto& c : comps) {
        const ContinuityCertificate cert = continuity_probe(f, eps, delta, domain, c, tol, opts);
        ok = ok && cert.pass;
        certs.push_back({{"eta", cert.eta}, {"pass", cert.pass}});
      }
      return Json{{"certificates", std::move(certs)}, {"pass", ok}};
    });
    CriticalSetC c;
    check("order", [&] {
      c = critical_level_curves(f, domain, tol);
      const OrderReport rep = order_report(c, tol);
      return Json{{"members", c.members.size()}, {"hasse", rep.hasse.size()}, {"maximal", rep.maximal}};
    });
    check("two_curve", [&] {
      std::vector<CurveRef> curves;
      for (const auto& comp : comps)
        if (comp.vertices.empty()) curves.push_back(CurveRef::level_curve(comp, tol));
      int pairs = 0;
      for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
          if (precedes(curves[i], curves[j], tol) || precedes(curves[j], curves[i], tol)) continue;
          two_curve_critical_witness(c, curves[i], curves[j], tol);
          ++pairs;
        }
      if (pairs == 0) return Json{{"skipped", "no pair of mutually exterior non-critical curves at this level"}};
      return Json{{"pairs", pairs}};
    });
    check("decompose", [&] {
      AnnulusOptions opts;
      opts.threads = cfg.threads;
      const Decomposition d = decompose(f, domain, tol, opts);
      bool ok = true;
      for (const auto& cert : d.certificates) ok = ok && cert.pass;
      return Json{{"regions", d.regions.size()}, {"pass", ok}};
    });
    doc["checks"] = std::move(checks);
    doc["pass"] = status == 0;
  }
};

}  // namespace

const std::vector<std::string>& tolerance_names() {
  static const std::vector<std::string> names{"trace", "vertex",   "snap",     "phi",      "hull",
                                              "angle", "cluster",  "step-max", "step-min", "max-turn"};
  return names;
}

Tolerances resolve_tolerances(const RunConfig& cfg) {
  Tolerances t;
  for (const auto& [name, value] : cfg.tol_overrides) {
    double* slot = tolerance_slot(t, name);
    if (slot == nullptr) throw UsageError("unknown tolerance --tol-" + name);
    if (!std::isfinite(value) || value <= 0.0) throw UsageError("--tol-" + name + " must be positive and finite");
    *slot = value;
  }
  return t;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Session s(cfg);
  s.doc["schema"] = io::kSchema;
  s.doc["command"] = cfg.command;
  try {
    if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
    s.tol = resolve_tolerances(cfg);
    s.doc["tolerances"] = io::to_json(s.tol);
    if (cfg.command == "trace") {
      s.trace();
    } else if (cfg.command == "graph") {
      s.graph();
    } else if (cfg.command == "gauss-lucas") {
      s.gauss_lucas();
    } else if (cfg.command == "continuity") {
      s.continuity();
    } else if (cfg.command == "order") {
      s.order();
    } else if (cfg.command == "decompose") {
      s.decompose_cmd();
    } else if (cfg.command == "verify-all") {
      s.verify_all();
    } else {
      throw UsageError("unknown command '" + cfg.command + "'");
    }
  } catch (const Error& e) {
    s.doc["error"] = {{"kind", e.exit_code()}, {"message", e.what()}};
    s.status = e.exit_code();
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    s.doc["error"] = {{"kind", 2}, {"message", e.what()}};
    s.status = 2;
    err << "error: " << e.what() << '\n';
  }
  s.doc["exit_code"] = s.status;
  const std::string text = s.doc.dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    try {
      write_text(cfg.out, text);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return s.status;
}

}  // namespace lvl
