#include "brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

double one_sided(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.empty() || y.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const Complex a : x) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex b : y) best = std::min(best, std::abs(a - b));
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  return std::max(one_sided(x, y), one_sided(y, x));
}

Complex central_difference(const std::function<Complex(Complex)>& f, Complex z, double h) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c) {
  const Complex d = std::sqrt(b * b - 4.0 * c);
  return {(-b + d) / 2.0, (-b - d) / 2.0};
}

Raster marching_squares(const std::function<double(Complex)>& g, double x0, double y0, double x1, double y1, int n) {
  Raster r;
  const double dx = (x1 - x0) / n;
  const double dy = (y1 - y0) / n;
  r.cell_diagonal = std::hypot(dx, dy);
  std::vector<double> v(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j * (n + 1) + i)]; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) at(i, j) = g(Complex(x0 + i * dx, y0 + j * dy));
  auto crossing = [&](Complex a, double ga, Complex b, double gb) {
    const double t = ga / (ga - gb);
    r.crossings.push_back(a + t * (b - a));
  };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const Complex p(x0 + i * dx, y0 + j * dy);
      if (i < n && ((at(i, j) < 0) != (at(i + 1, j) < 0))) crossing(p, at(i, j), p + Complex(dx, 0), at(i + 1, j));
      if (j < n && ((at(i, j) < 0) != (at(i, j + 1) < 0))) crossing(p, at(i, j), p + Complex(0, dy), at(i, j + 1));
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool s0 = at(i, j) < 0, s1 = at(i + 1, j) < 0, s2 = at(i, j + 1) < 0, s3 = at(i + 1, j + 1) < 0;
      if (!(s0 == s1 && s1 == s2 && s2 == s3)) r.cell_centers.emplace_back(x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy);
    }
  return r;
}

FloodCounts flood_fill_regions(const std::function<double(Complex)>& g, double x0, double y0, double x1, double y1,
                               int n) {
  std::vector<signed char> sign(static_cast<std::size_t>(n * n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      sign[static_cast<std::size_t>(j * n + i)] =
          g(Complex(x0 + (i + 0.5) * (x1 - x0) / n, y0 + (j + 0.5) * (y1 - y0) / n)) < 0 ? -1 : 1;
  std::vector<char> seen(sign.size(), 0);
  FloodCounts out;
  std::vector<int> stack;
  for (int start = 0; start < n * n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    const signed char s = sign[static_cast<std::size_t>(start)];
    (s < 0 ? out.negative : out.positive)++;
    stack.push_back(start);
    seen[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int i = c % n, j = c / n;
      const int nb[4][2] = {{i + 1, j}, {i - 1, j}, {i, j + 1}, {i, j - 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= n || q[1] < 0 || q[1] >= n) continue;
        const int k = q[1] * n + q[0];
        if (seen[static_cast<std::size_t>(k)] || sign[static_cast<std::size_t>(k)] != s) continue;
        seen[static_cast<std::size_t>(k)] = 1;
        stack.push_back(k);
      }
    }
  }
  return out;
}

double hull_excess(const std::vector<Complex>& pts, Complex q, int directions) {
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < directions; ++k) {
    const Complex d = std::polar(1.0, 2.0 * M_PI * k / directions);
    double support = -std::numeric_limits<double>::infinity();
    for (const Complex p : pts) support = std::max(support, (p * std::conj(d)).real());
    worst = std::max(worst, (q * std::conj(d)).real() - support);
  }
  return worst;
}

bool inside(const std::vector<Complex>& ring, Complex p) {
  bool in = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = ring[i], b = ring[j];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = a.real() + (p.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (p.real() < x) in = !in;
    }
  }
  return in;
}

double polyline_hausdorff(const std::vector<std::vector<Complex>>& lines, bool closed,
                          const std::vector<Complex>& pts) {
  std::vector<Complex> vertices;
  std::vector<std::pair<Complex, Complex>> segs;
  for (const auto& l : lines) {
    vertices.insert(vertices.end(), l.begin(), l.end());
    for (std::size_t i = 0; i + 1 < l.size(); ++i) segs.emplace_back(l[i], l[i + 1]);
    if (closed && l.size() > 2) segs.emplace_back(l.back(), l.front());
    if (l.size() == 1) segs.emplace_back(l[0], l[0]);
  }
  if (vertices.empty() || pts.empty()) return std::numeric_limits<double>::infinity();
  double worst = one_sided(vertices, pts);
  for (const Complex p : pts) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : segs) {
      const Complex ab = b - a;
      const double len2 = std::norm(ab);
      double t = 0.0;
      if (len2 > 0.0) t = std::min(1.0, std::max(0.0, ((p - a) * std::conj(ab)).real() / len2));
      best = std::min(best, std::abs(p - (a + t * ab)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace oracle
