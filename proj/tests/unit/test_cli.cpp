#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "levelcurve/cli.hpp"

using Json = nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string text;
  std::string err;
  Json doc;
};

Result run(lvl::RunConfig cfg) {
  std::ostringstream out, err;
  Result r;
  r.code = lvl::run(cfg, out, err);
  r.text = out.str();
  r.err = err.str();
  r.doc = Json::parse(r.text);
  return r;
}

lvl::RunConfig config(const std::string& command, const std::string& fn, std::optional<double> eps = std::nullopt) {
  lvl::RunConfig c;
  c.command = command;
  c.fn = fn;
  c.eps = eps;
  return c;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("levelcurve_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("graph of z^5 - 1 at the critical level") {
  const Result r = run(config("graph", "poly:1,0,0,0,0,-1", 1.0));
  REQUIRE(r.code == 0);
  CHECK(r.doc["schema"] == "levelcurve/1");
  REQUIRE(r.doc["graphs"].size() == 1);
  const Json& g = r.doc["graphs"][0];
  CHECK(g["summary"]["V"] == 1);
  CHECK(g["summary"]["E"] == 5);
  CHECK(g["summary"]["bounded_faces"] == 5);
  CHECK(g["vertices"][0]["degree"] == 10);
  CHECK(std::hypot(g["vertices"][0]["re"].get<double>(), g["vertices"][0]["im"].get<double>()) < 1e-6);
  int bounded = 0;
  for (const Json& f : g["faces"]) bounded += f["bounded"].get<bool>();
  CHECK(bounded == 5);
  int holding = 0;
  for (const auto& [face, zs] : g["zeros_per_face"].items()) holding += zs.size() == 1;
  CHECK(holding == 5);
}

TEST_CASE("trace of z at eps 2 is one closed circle of radius 2") {
  lvl::RunConfig cfg = config("trace", "poly:1,0", 2.0);
  cfg.csv = temp_path("trace.csv");
  cfg.svg = temp_path("trace.svg");
  const Result r = run(cfg);
  REQUIRE(r.code == 0);
  REQUIRE(r.doc["components"].size() == 1);
  const Json& arcs = r.doc["components"][0]["arcs"];
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0]["closed"] == true);
  std::size_t n = 0;
  for (const Json& p : arcs[0]["points"]) {
    CHECK(std::abs(std::hypot(p[0].get<double>(), p[1].get<double>()) - 2.0) <= 1e-9);
    ++n;
  }
  CHECK(n > 100);
  std::istringstream csv(slurp(cfg.csv));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "component_id,arc_id,re,im");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == n);
  CHECK(slurp(cfg.svg).rfind("<svg", 0) == 0);
  std::remove(cfg.csv.c_str());
  std::remove(cfg.svg.c_str());
}

TEST_CASE("verify-all on the lemniscate passes") {
  const Result r = run(config("verify-all", "poly:1,0,-1", 1.0));
  CHECK(r.code == 0);
  CHECK(r.doc["pass"] == true);
  for (const Json& c : r.doc["checks"]) {
    INFO(c.dump());
    if (c["name"] == "two_curve")
      CHECK(c["status"] == "skipped");
    else
      CHECK(c["status"] == "pass");
  }
}

TEST_CASE("verify-all runs the two-curve check when the level splits") {
  // Below the critical value 1 the lemniscate level set has two ovals.
  const Result r = run(config("verify-all", "poly:1,0,-1", 0.5));
  CHECK(r.code == 0);
  bool seen = false;
  for (const Json& c : r.doc["checks"])
    if (c["name"] == "two_curve") {
      seen = true;
      CHECK(c["status"] == "pass");
      CHECK(c["detail"]["pairs"] == 1);
    }
  CHECK(seen);
}

TEST_CASE("identical configs give byte-identical JSON") {
  lvl::RunConfig a = config("decompose", "poly:1,0,0");
  lvl::RunConfig b = a;
  b.threads = 3;
  CHECK(run(a).text == run(a).text);
  CHECK(run(a).text == run(b).text);

  lvl::RunConfig c = config("continuity", "poly:1,0,0,0,0,-1", 1.0);
  c.delta = 0.1;
  lvl::RunConfig d = c;
  d.threads = 4;
  const Result rc = run(c);
  CHECK(rc.code == 0);
  CHECK(rc.text == run(d).text);

  lvl::RunConfig g;
  g.command = "gauss-lucas";
  g.corpus = 25;
  g.seed = 9;
  const Result rg = run(g);
  CHECK(rg.code == 0);
  CHECK(rg.doc["reports"].size() == 25);
  CHECK(rg.text == run(g).text);
  g.seed = 10;
  CHECK(rg.text != run(g).text);
}

TEST_CASE("decompose writes regions and the phi grid") {
  lvl::RunConfig cfg = config("decompose", "poly:1,0,0,0,0,-1");
  cfg.emit_phi = temp_path("phi.csv");
  cfg.out = temp_path("decompose.json");
  std::ostringstream out, err;
  REQUIRE(lvl::run(cfg, out, err) == 0);
  CHECK(out.str().empty());
  const Json doc = Json::parse(slurp(cfg.out));
  const Json& regions = doc["decomposition"]["regions"];
  CHECK(regions.size() == 6);
  for (const Json& r : regions) {
    CHECK(r["certificate"]["pass"] == true);
    CHECK(std::abs(r["M"].get<int>()) == r["N"].get<int>());
    CHECK(r["max_power_residual"].get<double>() <= r["certificate"]["power_bound"].get<double>());
  }
  std::istringstream csv(slurp(cfg.emit_phi));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "region_id,w_re,w_im,phi_re,phi_im");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows > 1000);
  std::remove(cfg.emit_phi.c_str());
  std::remove(cfg.out.c_str());
}

TEST_CASE("order on a Blaschke product in the disk") {
  lvl::RunConfig cfg = config("order", "blaschke:0.7,0.3,-0.5/");
  cfg.domain = "disk";
  const Result r = run(cfg);
  REQUIRE(r.code == 0);
  const Json& o = r.doc["order"];
  const int maximal = o["maximal"];
  CHECK(o["members"][static_cast<std::size_t>(maximal)]["kind"] == "critical_level_curve");
  CHECK(o["hasse"].size() + 1 == o["members"].size());
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run(config("trace", "poly:1,x", 1.0)).code == 1);
  CHECK(run(config("trace", "poly:1,0")).code == 1);
  CHECK(run(config("trace", "poly:1,0", -1.0)).code == 1);
  CHECK(run(config("nonsense", "poly:1,0", 1.0)).code == 1);
  CHECK(run(config("trace", "", 1.0)).code == 1);
  lvl::RunConfig t = config("trace", "poly:1,0", 1.0);
  t.tol_overrides = {{"trace", 0.0}};
  CHECK(run(t).code == 1);
  t.tol_overrides = {{"nope", 1.0}};
  CHECK(run(t).code == 1);
  t.tol_overrides = {};
  t.threads = 0;
  CHECK(run(t).code == 1);
  lvl::RunConfig rect = config("decompose", "poly:1,0");
  rect.domain = "rect:-1,-1,1,1";
  const Result rr = run(rect);
  CHECK(rr.code == 1);
  CHECK(rr.doc["error"]["kind"] == 1);
  CHECK(!rr.err.empty());
}

TEST_CASE("tolerance overrides reach the run") {
  lvl::RunConfig cfg = config("trace", "poly:1,0,0", 1.0);
  cfg.tol_overrides = {{"trace", 1e-7}, {"step-max", 0.05}};
  const Result r = run(cfg);
  CHECK(r.code == 0);
  CHECK(r.doc["tolerances"]["trace"] == 1e-7);
  CHECK(r.doc["tolerances"]["step-max"] == 0.05);
  CHECK(r.doc["tolerances"]["phi"] == 1e-8);
}

TEST_CASE("gauss-lucas on a single polynomial") {
  lvl::RunConfig cfg;
  cfg.command = "gauss-lucas";
  cfg.poly = "poly:1,0,-1,0";
  const Result r = run(cfg);
  REQUIRE(r.code == 0);
  REQUIRE(r.doc["reports"].size() == 1);
  CHECK(r.doc["reports"][0]["holds"] == true);
  CHECK(r.doc["reports"][0]["critical_points"].size() == 2);
  cfg.poly = "rat:1,0/1,1";
  CHECK(run(cfg).code == 1);
}
