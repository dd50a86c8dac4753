#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "levelcurve/config.hpp"

namespace lvl {

struct RunConfig {
  std::string command;  // trace, graph, gauss-lucas, continuity, order, decompose, verify-all
  std::string fn;       // function spec
  std::string poly;     // gauss-lucas: polynomial spec (falls back to fn)
  std::string domain = "plane";
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> outer_level;
  int corpus = 0;  // gauss-lucas: number of seeded random polynomials
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;       // JSON path; stdout when empty
  std::string svg;       // optional SVG path
  std::string csv;       // trace: optional polyline CSV path
  std::string emit_phi;  // decompose: optional phi grid CSV path
  std::vector<std::pair<std::string, double>> tol_overrides;  // name without the "tol-" prefix
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"trace", "graph", "gauss-lucas", "continuity",
                                              "order", "decompose", "verify-all"};
  return names;
}

/// Names accepted in RunConfig::tol_overrides.
const std::vector<std::string>& tolerance_names();
/// Defaults with the overrides applied; unknown names and values that are
/// not positive and finite are a UsageError.
Tolerances resolve_tolerances(const RunConfig& cfg);

/// Runs one subcommand. JSON goes to cfg.out, or to `out` when that is empty;
/// diagnostics go to `err`. Returns 0 when every certificate passes, 1 for a
/// usage error, 2 for a numerical failure, 3 for a certificate violation.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace lvl
