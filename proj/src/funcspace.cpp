#include "levelcurve/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "levelcurve/error.hpp"

namespace lvl {

DomainSpec DomainSpec::rectangle(double x0, double y0, double x1, double y1) {
  DomainSpec d;
  d.kind = Kind::Rectangle;
  d.x0 = std::min(x0, x1);
  d.x1 = std::max(x0, x1);
  d.y0 = std::min(y0, y1);
  d.y1 = std::max(y0, y1);
  return d;
}

bool DomainSpec::contains(Complex z) const {
  switch (kind) {
    case Kind::WholePlane:
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    case Kind::UnitDisk:
      return std::abs(z) < 1.0;
    case Kind::Rectangle:
      return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
  return false;
}

std::string DomainSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::WholePlane: os << "plane"; break;
    case Kind::UnitDisk: os << "disk"; break;
    case Kind::Rectangle: os << "rect:" << x0 << "," << y0 << "," << x1 << "," << y1; break;
  }
  return os.str();
}

RationalFn RationalFn::polynomial(Polynomial p, const RootOptions& ro) {
  RationalFn f;
  f.kind_ = Kind::Polynomial;
  f.num_ = std::move(p);
  f.den_ = Polynomial::constant(1.0);
  f.finalize(ro);
  return f;
}

RationalFn RationalFn::rational(Polynomial num, Polynomial den, const RootOptions& ro) {
  if (den.is_zero()) throw UsageError("rational function with zero denominator");
  RationalFn f;
  f.kind_ = den.degree() == 0 ? Kind::Polynomial : Kind::Rational;
  if (den.degree() == 0) {
    num = (1.0 / den.leading()) * num;
    den = Polynomial::constant(1.0);
  }
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.finalize(ro);
  return f;
}

RationalFn RationalFn::blaschke_ratio(std::vector<Complex> b1_zeros, std::vector<Complex> b2_zeros,
                                      const RootOptions& ro) {
  for (const auto* set : {&b1_zeros, &b2_zeros}) {
    for (const Complex a : *set) {
      if (!(std::abs(a) < 1.0)) {
        throw UsageError("Blaschke factor parameter " + format_complex(a) + " is not inside the unit disk");
      }
    }
  }
  // B(z) = prod (z - a) / prod (1 - conj(a) z)
  auto factor_num = [](Complex a) { return Polynomial({-a, Complex(1.0, 0.0)}); };
  auto factor_den = [](Complex a) { return Polynomial({Complex(1.0, 0.0), -std::conj(a)}); };
  Polynomial num = Polynomial::constant(1.0);
  Polynomial den = Polynomial::constant(1.0);
  for (const Complex a : b1_zeros) {
    num = num * factor_num(a);
    den = den * factor_den(a);
  }
  for (const Complex b : b2_zeros) {
    num = num * factor_den(b);
    den = den * factor_num(b);
  }
  RationalFn f;
  f.kind_ = Kind::BlaschkeRatio;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.b1_ = std::move(b1_zeros);
  f.b2_ = std::move(b2_zeros);
  f.finalize(ro);
  return f;
}

void RationalFn::finalize(const RootOptions& ro) {
  if (num_.is_zero()) throw UsageError("f is identically zero");
  dnum_ = num_.derivative();
  dden_ = den_.derivative();
  Polynomial crit = dnum_ * den_ - num_ * dden_;
  crit = crit.trimmed(1e-13);
  if (crit.is_zero()) throw UsageError("f is constant; level curves require a non-constant function");

  zeros_ = num_.degree() > 0 ? find_roots(num_, ro) : std::vector<RootMult>{};
  poles_ = den_.degree() > 0 ? find_roots(den_, ro) : std::vector<RootMult>{};

  double s = 1.0;
  for (const auto& r : zeros_) s = std::max(s, std::abs(r.z));
  for (const auto& r : poles_) s = std::max(s, std::abs(r.z));
  for (const auto& z : zeros_) {
    for (const auto& p : poles_) {
      if (std::abs(z.z - p.z) <= 1e-7 * s) {
        throw UsageError("numerator and denominator share the root " + format_complex(z.z));
      }
    }
  }

  crit_num_ = crit;
  std::vector<RootMult> cands = crit.degree() > 0 ? find_roots(crit, ro) : std::vector<RootMult>{};
  // A pole of order m leaves a factor (z - p)^(m-1) in N'D - ND'.
  for (const auto& p : poles_) {
    int to_remove = p.mult - 1;
    const double radius = 1e-4 * std::max(1.0, std::abs(p.z));
    for (auto& c : cands) {
      if (to_remove <= 0) break;
      if (c.mult > 0 && std::abs(c.z - p.z) <= radius) {
        const int take = std::min(to_remove, c.mult);
        c.mult -= take;
        to_remove -= take;
      }
    }
  }
  critical_.clear();
  for (const auto& c : cands)
    if (c.mult > 0) critical_.push_back(c);
}

FnValue RationalFn::eval(Complex z) const {
  const Complex n = num_(z);
  const Complex d = den_(z);
  if (d == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), true};
  const Complex v = n / d;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {Complex(0.0, 0.0), true};
  return {v, false};
}

FnValue RationalFn::eval_derivative(Complex z) const {
  Complex n, dn, d, dd;
  num_.eval_with_derivative(z, n, dn);
  den_.eval_with_derivative(z, d, dd);
  if (d == Complex(0.0, 0.0)) return {Complex(0.0, 0.0), true};
  const Complex v = (dn * d - n * dd) / (d * d);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {Complex(0.0, 0.0), true};
  return {v, false};
}

double RationalFn::abs(Complex z) const {
  const FnValue v = eval(z);
  return v.infinite ? std::numeric_limits<double>::infinity() : std::abs(v.value);
}

double RationalFn::log_abs(Complex z) const {
  return std::log(std::abs(num_(z))) - std::log(std::abs(den_(z)));
}

Complex RationalFn::log_derivative(Complex z) const {
  Complex n, dn, d, dd;
  num_.eval_with_derivative(z, n, dn);
  den_.eval_with_derivative(z, d, dd);
  return dn / n - dd / d;
}

std::vector<Complex> RationalFn::taylor(Complex c, int order) const {
  const Polynomial n = num_.taylor_shift(c);
  const Polynomial d = den_.taylor_shift(c);
  if (d.coeff(0) == Complex(0.0, 0.0)) throw UsageError("Taylor expansion requested at a pole");
  std::vector<Complex> q(static_cast<std::size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Complex acc = n.coeff(k);
    for (int j = 1; j <= k; ++j) acc -= d.coeff(j) * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc / d.coeff(0);
  }
  return q;
}

namespace {
std::vector<RootMult> filter_in(const std::vector<RootMult>& v, const DomainSpec& d) {
  std::vector<RootMult> out;
  for (const auto& r : v)
    if (d.contains(r.z)) out.push_back(r);
  return out;
}
}  // namespace

std::vector<RootMult> RationalFn::zeros_in(const DomainSpec& d) const { return filter_in(zeros_, d); }
std::vector<RootMult> RationalFn::poles_in(const DomainSpec& d) const { return filter_in(poles_, d); }
std::vector<RootMult> RationalFn::critical_points_in(const DomainSpec& d) const {
  return filter_in(critical_, d);
}

int RationalFn::reduced_critical_degree() const {
  int deg = crit_num_.degree();
  for (const auto& p : poles_) deg -= p.mult - 1;
  return deg;
}

double RationalFn::scale(const DomainSpec& d) const {
  double s = 1.0;
  for (const auto* set : {&zeros_, &poles_, &critical_})
    for (const auto& r : *set)
      if (d.contains(r.z)) s = std::max(s, std::abs(r.z));
  return s;
}

double RationalFn::level_radius_bound(double eps) const {
  // Any z with |f(z)| = eps is a root of N - eps e^{it} D for some t; apply
  // the Cauchy bound with coefficient moduli bounded uniformly in t.
  const int n = num_.degree();
  const int m = den_.degree();
  const int deg = std::max(n, m);
  double lead;
  if (n > m) {
    lead = std::abs(num_.leading());
  } else if (n < m) {
    lead = eps * std::abs(den_.leading());
  } else {
    lead = std::abs(std::abs(num_.leading()) - eps * std::abs(den_.leading()));
    if (lead <= 1e-12 * (std::abs(num_.leading()) + eps * std::abs(den_.leading()))) {
      throw NumericalError("level set at eps = " + std::to_string(eps) +
                           " is unbounded (eps equals the limit of |f| at infinity)");
    }
  }
  double worst = 0.0;
  for (int i = 0; i < deg; ++i) worst = std::max(worst, std::abs(num_.coeff(i)) + eps * std::abs(den_.coeff(i)));
  return 1.0 + worst / lead;
}

void validate_domain(const RationalFn& f, const DomainSpec& d) {
  switch (d.kind) {
    case DomainSpec::Kind::UnitDisk:
      if (f.kind() != RationalFn::Kind::BlaschkeRatio) {
        throw UsageError("the unit-disk domain requires a Blaschke ratio (blaschke:...)");
      }
      if (f.blaschke_b1().size() == f.blaschke_b2().size()) {
        throw UsageError(
            "deg B1 == deg B2: a level curve of B1/B2 meets the unit circle, so the disk is not an admissible "
            "domain");
      }
      break;
    case DomainSpec::Kind::Rectangle:
      if (!(d.x1 > d.x0 && d.y1 > d.y0)) throw UsageError("degenerate rectangle domain " + d.to_string());
      for (const auto& p : f.poles()) {
        const bool on_x = (std::abs(p.z.real() - d.x0) < 1e-12 || std::abs(p.z.real() - d.x1) < 1e-12) &&
                          p.z.imag() >= d.y0 && p.z.imag() <= d.y1;
        const bool on_y = (std::abs(p.z.imag() - d.y0) < 1e-12 || std::abs(p.z.imag() - d.y1) < 1e-12) &&
                          p.z.real() >= d.x0 && p.z.real() <= d.x1;
        if (on_x || on_y) throw UsageError("pole " + format_complex(p.z) + " lies on the rectangle boundary");
      }
      break;
    case DomainSpec::Kind::WholePlane:
      break;
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text, const std::string& whole) {
  std::string t = text;
  if (!t.empty() && t.front() == '+') t.erase(t.begin());
  if (t.empty() || t == "-") throw UsageError("malformed complex literal '" + whole + "'");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw UsageError("malformed complex literal '" + whole + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Polynomial parse_poly_body(std::string body) {
  body = trim(body);
  if (body.rfind("poly:", 0) == 0) body = body.substr(5);
  if (body.empty()) throw UsageError("empty polynomial coefficient list");
  std::vector<Complex> desc;
  for (const auto& tok : split(body, ',')) desc.push_back(parse_complex(tok));
  std::vector<Complex> asc(desc.rbegin(), desc.rend());
  return Polynomial(std::move(asc));
}

std::vector<Complex> parse_point_list(const std::string& body) {
  std::vector<Complex> out;
  const std::string t = trim(body);
  if (t.empty()) return out;
  for (const auto& tok : split(t, ',')) out.push_back(parse_complex(tok));
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i') return {parse_real(s, s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, s);
  };
  if (split_at == std::string::npos) return {0.0, imag_of(body)};
  return {parse_real(body.substr(0, split_at), s), imag_of(body.substr(split_at))};
}

std::string format_complex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

RationalFn parse_function(const std::string& spec_in, const RootOptions& ro) {
  const std::string spec = trim(spec_in);
  RationalFn f;
  if (spec.rfind("poly:", 0) == 0) {
    f = RationalFn::polynomial(parse_poly_body(spec.substr(5)), ro);
  } else if (spec.rfind("rat:", 0) == 0) {
    const auto parts = split(spec.substr(4), '/');
    if (parts.size() != 2) throw UsageError("rat: expects <poly>/<poly>, got '" + spec + "'");
    f = RationalFn::rational(parse_poly_body(parts[0]), parse_poly_body(parts[1]), ro);
  } else if (spec.rfind("blaschke:", 0) == 0) {
    const auto parts = split(spec.substr(9), '/');
    if (parts.size() != 2) throw UsageError("blaschke: expects z1,.../w1,..., got '" + spec + "'");
    f = RationalFn::blaschke_ratio(parse_point_list(parts[0]), parse_point_list(parts[1]), ro);
  } else {
    throw UsageError("unknown function spec '" + spec + "' (expected poly:, rat: or blaschke:)");
  }
  f.set_spec(spec);
  return f;
}

DomainSpec parse_domain(const std::string& spec_in) {
  const std::string spec = trim(spec_in);
  if (spec == "plane") return DomainSpec::plane();
  if (spec == "disk") return DomainSpec::unit_disk();
  if (spec.rfind("rect:", 0) == 0) {
    const auto parts = split(spec.substr(5), ',');
    if (parts.size() != 4) throw UsageError("rect: expects x0,y0,x1,y1");
    double v[4];
    for (int i = 0; i < 4; ++i) v[i] = parse_real(trim(parts[static_cast<std::size_t>(i)]), spec);
    return DomainSpec::rectangle(v[0], v[1], v[2], v[3]);
  }
  throw UsageError("unknown domain '" + spec + "' (expected plane, disk or rect:x0,y0,x1,y1)");
}

}  // namespace lvl
