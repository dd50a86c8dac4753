#include "levelcurve/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "levelcurve/error.hpp"
#include "levelcurve/kernels.hpp"
#include "levelcurve/parallel.hpp"

namespace lvl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Split {
  std::vector<double> x, y;
  explicit Split(std::span<const Complex> pts) : x(pts.size()), y(pts.size()) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      x[i] = pts[i].real();
      y[i] = pts[i].imag();
    }
  }
};

double sup_min_brute(std::span<const Complex> xs, std::span<const Complex> ys, bool scalar_only) {
  const Split a(xs), b(ys);
  std::vector<double> best(xs.size(), kInf);
  if (scalar_only) {
    simd::min_dist2_batch(simd::Isa::Scalar, a.x.data(), a.y.data(), xs.size(), b.x.data(), b.y.data(), ys.size(),
                          best.data());
  } else {
    simd::min_dist2_batch(a.x.data(), a.y.data(), xs.size(), b.x.data(), b.y.data(), ys.size(), best.data());
  }
  double worst = 0.0;
  for (const double d : best) worst = std::max(worst, d);
  return std::sqrt(worst);
}

// Exact nearest squared distances through a bucket grid over y. Cells are
// visited in growing Chebyshev rings around the (clamped) cell of the query;
// after ring r every unvisited point is at least r cells away.
double sup_min_grid(std::span<const Complex> xs, std::span<const Complex> ys) {
  double x0 = kInf, y0 = kInf, x1 = -kInf, y1 = -kInf;
  for (const Complex q : ys) {
    x0 = std::min(x0, q.real());
    x1 = std::max(x1, q.real());
    y0 = std::min(y0, q.imag());
    y1 = std::max(y1, q.imag());
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-300});
  const double cell = std::max(span / std::max(1.0, std::sqrt(static_cast<double>(ys.size()))), span * 1e-6);
  const int nx = std::max(1, static_cast<int>((x1 - x0) / cell) + 1);
  const int ny = std::max(1, static_cast<int>((y1 - y0) / cell) + 1);
  std::vector<int> start(static_cast<std::size_t>(nx) * ny + 1, 0);
  auto cx_of = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - x0) / cell)), 0, nx - 1); };
  auto cy_of = [&](double y) { return std::clamp(static_cast<int>(std::floor((y - y0) / cell)), 0, ny - 1); };
  std::vector<std::size_t> cell_id(ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) {
    cell_id[j] = static_cast<std::size_t>(cy_of(ys[j].imag())) * nx + static_cast<std::size_t>(cx_of(ys[j].real()));
    ++start[cell_id[j] + 1];
  }
  for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
  std::vector<double> qx(ys.size()), qy(ys.size());
  {
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const auto slot = static_cast<std::size_t>(fill[cell_id[j]]++);
      qx[slot] = ys[j].real();
      qy[slot] = ys[j].imag();
    }
  }
  const int max_ring = std::max(nx, ny);
  double worst = 0.0;
  for (const Complex p : xs) {
    const double px = p.real(), py = p.imag();
    const int cx = cx_of(px), cy = cy_of(py);
    double best = kInf;
    auto scan = [&](int ix, int iy) {
      if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return;
      const auto c = static_cast<std::size_t>(iy) * nx + static_cast<std::size_t>(ix);
      simd::scalar::min_dist2_batch(&px, &py, 1, qx.data() + start[c], qy.data() + start[c],
                                    static_cast<std::size_t>(start[c + 1] - start[c]), &best);
    };
    for (int r = 0; r <= max_ring; ++r) {
      if (r == 0) {
        scan(cx, cy);
      } else {
        for (int ix = cx - r; ix <= cx + r; ++ix) {
          scan(ix, cy - r);
          scan(ix, cy + r);
        }
        for (int iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
          scan(cx - r, iy);
          scan(cx + r, iy);
        }
      }
      const double reach = r * cell;
      if (best < reach * reach * (1.0 - 1e-12)) break;
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace

double one_sided_distance(std::span<const Complex> x, std::span<const Complex> y, HausdorffMethod method) {
  if (x.empty() || y.empty()) return kInf;
  if (method == HausdorffMethod::Auto) {
    method = static_cast<double>(x.size()) * static_cast<double>(y.size()) > 4e6 ? HausdorffMethod::Grid
                                                                               : HausdorffMethod::Brute;
  }
  switch (method) {
    case HausdorffMethod::Grid:
      return sup_min_grid(x, y);
    case HausdorffMethod::BruteScalar:
      return sup_min_brute(x, y, true);
    default:
      return sup_min_brute(x, y, false);
  }
}

HausdorffReport hausdorff(std::span<const Complex> x, std::span<const Complex> y, HausdorffMethod method) {
  HausdorffReport r;
  r.d1 = one_sided_distance(x, y, method);
  r.d2 = one_sided_distance(y, x, method);
  r.d_check = std::max(r.d1, r.d2);
  return r;
}

ContinuityCertificate continuity_probe(const RationalFn& f, double eps, double delta, const DomainSpec& domain,
                                       const LevelCurveComponent& component, const Tolerances& tol,
                                       const ContinuityOptions& opts) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw UsageError("continuity probe needs a positive finite level");
  if (!(delta > 0.0)) throw UsageError("continuity probe needs delta > 0");
  if (opts.samples_per_side < 1) throw UsageError("continuity probe needs at least one sample per side");
  const Tracer tracer(f, domain, tol);
  const std::vector<Complex> target = component.sample_points();
  if (target.empty()) throw UsageError("continuity probe needs a traced component");

  // Seeds: points spread along every edge at spacing below delta/2, away from
  // the vertices, so each edge contributes at least its midpoint.
  std::vector<Complex> seeds;
  for (const auto& arc : component.arcs) {
    const Polyline& pts = arc.points;
    if (pts.size() < 2) continue;
    const double length = polyline_length(pts);
    const int pieces = std::max(2, static_cast<int>(std::ceil(length / (0.5 * delta))));
    const double step = length / pieces;
    double walked = 0.0, next = 0.5 * step;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double seg = std::abs(pts[i] - pts[i - 1]);
      while (next <= walked + seg && seg > 0.0) {
        const Complex z = pts[i - 1] + (next - walked) / seg * (pts[i] - pts[i - 1]);
        bool near_vertex = false;
        for (const auto& v : component.vertices) near_vertex = near_vertex || std::abs(z - v.z) < 2.0 * v.capture_radius;
        if (!near_vertex) seeds.push_back(z);
        next += step;
      }
      walked += seg;
    }
  }

  ContinuityCertificate cert;
  cert.eps = eps;
  cert.delta = delta;
  const double base_disc = component.max_segment();
  const int K = opts.samples_per_side;

  auto run_trial = [&](double eta, std::vector<ContinuitySample>& out, double& disc) {
    std::vector<double> zetas;
    for (int k = K; k >= 1; --k) zetas.push_back(eps - eta * k / K);
    for (int k = 1; k <= K; ++k) zetas.push_back(eps + eta * k / K);
    out.assign(zetas.size(), {});
    std::vector<double> discs(zetas.size(), 0.0);
    parallel_for(zetas.size(), opts.threads, [&](std::size_t i) {
      const double zeta = zetas[i];
      std::vector<LevelCurveComponent> found;
      std::vector<SegmentIndex> indices;
      for (const Complex m : seeds) {
        Complex z = m;
        if (!tracer.correct(z, zeta) || std::abs(z - m) >= delta) continue;
        bool known = false;
        for (std::size_t c = 0; c < found.size() && !known; ++c) known = tracer.lies_on(indices[c], z, zeta);
        if (known) continue;
        found.push_back(tracer.trace_component(zeta, z));
        indices.emplace_back(found.back().polylines());
      }
      std::vector<Complex> pts;
      for (const auto& c : found) {
        const auto s = c.sample_points();
        pts.insert(pts.end(), s.begin(), s.end());
        discs[i] = std::max(discs[i], c.max_segment());
      }
      out[i] = {zeta, hausdorff(pts, target).d_check, static_cast<int>(found.size())};
    });
    disc = base_disc;
    bool ok = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
      ok = ok && out[i].d_check < delta;
      disc = std::max(disc, discs[i]);
    }
    ++cert.trials;
    return ok;
  };

  std::vector<ContinuitySample> samples;
  double disc = 0.0;
  double fail_eta = 0.0;
  double eta = 0.5 * eps;
  bool found = false;
  while (eta >= 1e-9 * eps) {
    if (run_trial(eta, samples, disc)) {
      found = true;
      break;
    }
    cert.samples = samples;
    cert.discretization = disc;
    fail_eta = eta;
    eta *= 0.5;
  }
  if (!found) {
    cert.pass = false;
    cert.eta = 0.0;
    return cert;
  }
  cert.pass = true;
  cert.eta = eta;
  cert.samples = samples;
  cert.discretization = disc;
  if (fail_eta > 0.0) {
    double lo = eta, hi = fail_eta;
    for (int s = 0; s < opts.refine_steps; ++s) {
      const double mid = 0.5 * (lo + hi);
      std::vector<ContinuitySample> trial;
      double trial_disc = 0.0;
      if (run_trial(mid, trial, trial_disc)) {
        lo = mid;
        cert.eta = mid;
        cert.samples = std::move(trial);
        cert.discretization = trial_disc;
      } else {
        hi = mid;
      }
    }
  }
  return cert;
}

}  // namespace lvl
