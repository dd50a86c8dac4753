#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "levelcurve/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Level curves of rational functions: tracing, graphs, nesting order and annulus maps"};
  app.require_subcommand(1);

  lvl::RunConfig cfg;
  double eps = 0.0, delta = 0.0, outer = 0.0;
  std::map<std::string, double> tol;

  auto common = [&](CLI::App* sub, bool fn_required) {
    auto* opt = sub->add_option("--fn", cfg.fn, "function: poly:c_n,...,c_0 | rat:<poly>/<poly> | blaschke:a,.../b,...");
    if (fn_required) opt->required();
    sub->add_option("--domain", cfg.domain, "plane | disk | rect:x0,y0,x1,y1")->capture_default_str();
    sub->add_option("--out", cfg.out, "JSON output path (stdout when absent)");
    sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "RNG seed for corpus commands")->capture_default_str();
    for (const std::string& name : lvl::tolerance_names())
      sub->add_option("--tol-" + name, tol[name], "override the " + name + " tolerance");
  };

  auto* trace = app.add_subcommand("trace", "trace the level set |f| = eps");
  common(trace, true);
  trace->add_option("--eps", eps, "level")->required();
  trace->add_option("--csv", cfg.csv, "polyline CSV path");
  trace->add_option("--svg", cfg.svg, "SVG path");

  auto* graph = app.add_subcommand("graph", "planar graph of every component of |f| = eps");
  common(graph, true);
  graph->add_option("--eps", eps, "level")->required();
  graph->add_option("--svg", cfg.svg, "SVG path");

  auto* gl = app.add_subcommand("gauss-lucas", "critical points against the hull of the zeros");
  common(gl, false);
  gl->add_option("--poly", cfg.poly, "polynomial spec");
  gl->add_option("--corpus", cfg.corpus, "number of seeded random polynomials");

  auto* cont = app.add_subcommand("continuity", "eta-delta probe of the level sets near |f| = eps");
  common(cont, true);
  cont->add_option("--eps", eps, "level")->required();
  cont->add_option("--delta", delta, "distance bound")->required();

  auto* order = app.add_subcommand("order", "critical set and its nesting order");
  common(order, true);
  order->add_option("--svg", cfg.svg, "SVG path");

  auto* dec = app.add_subcommand("decompose", "annular regions and the maps phi");
  common(dec, true);
  dec->add_option("--outer-level", outer, "|f| on the outer boundary curve (plane and rect domains)");
  dec->add_option("--emit-phi", cfg.emit_phi, "phi grid CSV path");
  dec->add_option("--svg", cfg.svg, "SVG path");

  auto* all = app.add_subcommand("verify-all", "run every check on one function");
  common(all, true);
  all->add_option("--eps", eps, "level")->required();
  all->add_option("--delta", delta, "distance bound for the continuity check (default 0.1)");
  all->add_option("--outer-level", outer, "|f| on the outer boundary curve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  auto given = [&](const char* flag) {
    try {
      return sub->get_option(flag)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--eps")) cfg.eps = eps;
  if (given("--delta")) cfg.delta = delta;
  if (given("--outer-level")) cfg.outer_level = outer;
  for (const std::string& name : lvl::tolerance_names())
    if (given(("--tol-" + name).c_str())) cfg.tol_overrides.emplace_back(name, tol[name]);

  return lvl::run(cfg, std::cout, std::cerr);
}
