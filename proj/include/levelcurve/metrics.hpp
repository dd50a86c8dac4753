#pragma once

#include <span>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/funcspace.hpp"
#include "levelcurve/tracer.hpp"

namespace lvl {

/// One-sided distances and their maximum; +inf when either set is empty.
struct HausdorffReport {
  double d1 = 0.0;  // sup over X of the distance to Y
  double d2 = 0.0;  // sup over Y of the distance to X
  double d_check = 0.0;
};

enum class HausdorffMethod {
  Auto,         // grid for large inputs, otherwise brute force
  Brute,        // double loop through the dispatched kernel
  BruteScalar,  // double loop through the scalar reference kernel
  Grid,         // nearest neighbours from a uniform bucket grid
};

/// All methods return bit-identical results: each computes the same squared
/// distances and takes exact minima.
double one_sided_distance(std::span<const Complex> x, std::span<const Complex> y,
                          HausdorffMethod method = HausdorffMethod::Auto);
HausdorffReport hausdorff(std::span<const Complex> x, std::span<const Complex> y,
                          HausdorffMethod method = HausdorffMethod::Auto);

struct ContinuitySample {
  double zeta = 0.0;
  double d_check = 0.0;
  int curves = 0;  // level curves at zeta found near the component
};

struct ContinuityCertificate {
  double eps = 0.0;
  double delta = 0.0;
  double eta = 0.0;  // largest passing eta found, 0 when none
  std::vector<ContinuitySample> samples;  // the 2K samples at eta (or at the last trial)
  double discretization = 0.0;            // longest polyline segment involved
  int trials = 0;
  bool pass = false;
};

struct ContinuityOptions {
  int samples_per_side = 8;
  int refine_steps = 6;  // bisection steps between the largest pass and smallest fail
  int threads = 1;
};

/// Searches eta such that every level set piece near `component` at heights
/// zeta = eps +- eta k/K stays within delta of it in the check distance.
ContinuityCertificate continuity_probe(const RationalFn& f, double eps, double delta, const DomainSpec& domain,
                                       const LevelCurveComponent& component, const Tolerances& tol = {},
                                       const ContinuityOptions& opts = {});

}  // namespace lvl
