#pragma once

#include <vector>

#include "levelcurve/polynomial.hpp"

namespace lvl {

struct RootMult {
  Complex z;
  int mult = 1;
};

struct RootOptions {
  double cluster_tol = 1e-7;   // plain distance clustering, relative to the root scale
  double merge_tol = 1e-12;    // relative Taylor-residual test for wider multiple-root clusters
  int max_iterations = 800;
};

/// All roots of a nonzero polynomial with multiplicities, via Aberth-Ehrlich
/// simultaneous iteration followed by multiplicity clustering and polishing.
/// Multiplicities sum to the degree. Throws NumericalError on non-convergence.
std::vector<RootMult> find_roots(const Polynomial& p, const RootOptions& opts = {});

/// The raw (unclustered) Aberth-Ehrlich iterates, one per degree.
std::vector<Complex> aberth_roots(const Polynomial& p, int max_iterations = 800);

/// Scaled residual |p(z)| / (1 + sum |c_i| |z|^i).
double relative_residual(const Polynomial& p, Complex z);

}  // namespace lvl
