#include "levelcurve/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "levelcurve/error.hpp"

namespace lvl {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

Polynomial abs_coeff_poly(const Polynomial& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const Complex x : p.coeffs()) c.emplace_back(std::abs(x), 0.0);
  return Polynomial(std::move(c));
}

// True when c behaves like a root of multiplicity k: every Taylor coefficient
// below order k is at the rounding-noise level of its own evaluation bound.
// A k-fold root is a simple root of the (k-1)-th derivative.
Complex polish_multiple(const Polynomial& p, Complex z, int k) {
  Polynomial q = p;
  for (int d = 1; d < k; ++d) q = q.derivative();
  for (int it = 0; it < 8; ++it) {
    Complex v, dv;
    q.eval_with_derivative(z, v, dv);
    if (dv == Complex(0.0, 0.0)) break;
    const Complex cand = z - v / dv;
    if (std::abs(q(cand)) < std::abs(v)) z = cand; else break;
  }
  return z;
}

bool passes_multiplicity_test(const Polynomial& p, const Polynomial& abs_p, Complex c, int k, double tol) {
  c = polish_multiple(p, c, k);
  const Polynomial t = p.taylor_shift(c);
  const Polynomial b = abs_p.taylor_shift(Complex(std::abs(c), 0.0));
  for (int j = 0; j < k; ++j) {
    if (std::abs(t.coeff(j)) > tol * (b.coeff(j).real() + kEps)) return false;
  }
  return true;
}

}  // namespace

double relative_residual(const Polynomial& p, Complex z) {
  return std::abs(p(z)) / (1.0 + p.abs_bound(std::abs(z)));
}

std::vector<Complex> aberth_roots(const Polynomial& p, int max_iterations) {
  const int n = p.degree();
  if (n < 1) return {};
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  const Complex lead = p.leading();
  const Complex center = -p.coeff(n - 1) / (static_cast<double>(n) * lead);
  double radius = std::pow(std::abs(p(center) / lead), 1.0 / n);
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1e-3 * std::max(1.0, std::abs(center));

  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * M_PI * k / n + 0.7;
    z[static_cast<std::size_t>(k)] = center + std::polar(radius, theta);
  }

  std::vector<char> done(static_cast<std::size_t>(n), 0);
  int remaining = n;
  for (int iter = 0; iter < max_iterations && remaining > 0; ++iter) {
    for (int k = 0; k < n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      Complex value, deriv;
      p.eval_with_derivative(z[ku], value, deriv);
      const double noise = 8.0 * kEps * p.abs_bound(std::abs(z[ku]));
      if (std::abs(value) <= noise) {
        done[ku] = 1;
        --remaining;
        continue;
      }
      Complex sum(0.0, 0.0);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = z[ku] - z[static_cast<std::size_t>(j)];
        if (diff == Complex(0.0, 0.0)) diff = Complex(kEps, kEps);
        sum += 1.0 / diff;
      }
      const Complex ratio = deriv == Complex(0.0, 0.0) ? Complex(radius * 1e-3, 0.0) : value / deriv;
      const Complex denom = 1.0 - ratio * sum;
      const Complex w = denom == Complex(0.0, 0.0) ? ratio : ratio / denom;
      z[ku] -= w;
      if (std::abs(w) <= 2.0 * kEps * std::max(1.0, std::abs(z[ku]))) {
        done[ku] = 1;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    double worst = 0.0;
    for (const Complex r : z) worst = std::max(worst, relative_residual(p, r));
    std::ostringstream os;
    os << "Aberth iteration did not converge for degree " << n << " polynomial; worst scaled residual "
       << worst;
    if (worst > 1e-6) throw NumericalError(os.str());
  }
  return z;
}

std::vector<RootMult> find_roots(const Polynomial& p_in, const RootOptions& opts) {
  if (p_in.is_zero()) throw UsageError("roots of the zero polynomial are undefined");
  std::vector<RootMult> out;
  if (p_in.degree() == 0) return out;

  // Exact roots at the origin come from vanishing low-order coefficients.
  int zero_mult = 0;
  while (p_in.coeff(zero_mult) == Complex(0.0, 0.0)) ++zero_mult;
  Polynomial p = p_in;
  if (zero_mult > 0) {
    std::vector<Complex> c(p_in.coeffs().begin() + zero_mult, p_in.coeffs().end());
    p = Polynomial(std::move(c));
    out.push_back({Complex(0.0, 0.0), zero_mult});
  }
  if (p.degree() == 0) return out;

  const std::vector<Complex> raw = aberth_roots(p, opts.max_iterations);
  const int n = static_cast<int>(raw.size());
  double scale = 1.0;
  for (const Complex r : raw) scale = std::max(scale, std::abs(r));

  // Single linkage at growing radii; a group merges only if it passes the
  // multiplicity test as a whole, so a true k-fold cluster merges at the radius
  // matching its rounding spread.
  DisjointSets sets(n);
  const Polynomial abs_p = abs_coeff_poly(p);
  for (double radius = opts.cluster_tol * scale; radius <= 1e-2 * scale * 1.0001; radius *= 10.0) {
    DisjointSets linkage(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(raw[static_cast<std::size_t>(i)] - raw[static_cast<std::size_t>(j)]) <= radius) linkage.unite(i, j);
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(linkage.find(i))].push_back(i);
    for (const auto& g : groups) {
      if (g.size() < 2) continue;
      bool already = true;
      for (const int i : g) already = already && sets.find(i) == sets.find(g.front());
      if (already) continue;
      Complex centroid(0.0, 0.0);
      for (const int i : g) centroid += raw[static_cast<std::size_t>(i)];
      centroid /= static_cast<double>(g.size());
      const bool plain = radius <= opts.cluster_tol * scale * 1.0001;
      if (plain || passes_multiplicity_test(p, abs_p, centroid, static_cast<int>(g.size()), opts.merge_tol)) {
        for (const int i : g) sets.unite(i, g.front());
      }
    }
  }

  std::vector<std::vector<int>> clusters(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) clusters[static_cast<std::size_t>(sets.find(i))].push_back(i);
  for (const auto& c : clusters) {
    if (c.empty()) continue;
    Complex z(0.0, 0.0);
    for (const int i : c) z += raw[static_cast<std::size_t>(i)];
    z /= static_cast<double>(c.size());
    const int m = static_cast<int>(c.size());
    out.push_back({polish_multiple(p, z, m), m});
  }

  std::sort(out.begin(), out.end(), [](const RootMult& a, const RootMult& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

}  // namespace lvl
