#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levelcurve/config.hpp"
#include "levelcurve/polynomial.hpp"
#include "levelcurve/roots.hpp"

namespace lvl {

/// The region G on which level curves are studied.
struct DomainSpec {
  enum class Kind { WholePlane, UnitDisk, Rectangle };
  Kind kind = Kind::WholePlane;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;  // Rectangle corners
  /// For WholePlane / Rectangle decompositions: |f| on the outer boundary
  /// curve that closes G. Chosen automatically when absent.
  std::optional<double> outer_level;

  static DomainSpec plane() { return {}; }
  static DomainSpec unit_disk() {
    DomainSpec d;
    d.kind = Kind::UnitDisk;
    return d;
  }
  static DomainSpec rectangle(double x0, double y0, double x1, double y1);

  bool contains(Complex z) const;
  std::string to_string() const;
};

/// Result of evaluating f: a finite value, or the point-at-infinity flag.
struct FnValue {
  Complex value{0.0, 0.0};
  bool infinite = false;
};

/// f = numerator / denominator with cached derivatives and distinguished
/// points. Immutable after construction.
class RationalFn {
 public:
  enum class Kind { Polynomial, Rational, BlaschkeRatio };

  static RationalFn polynomial(Polynomial p, const RootOptions& ro = {});
  static RationalFn rational(Polynomial num, Polynomial den, const RootOptions& ro = {});
  /// f = B1 / B2 with B_k(z) = prod (z - a) / (1 - conj(a) z); every
  /// parameter must lie strictly inside the unit disk.
  static RationalFn blaschke_ratio(std::vector<Complex> b1_zeros, std::vector<Complex> b2_zeros,
                                   const RootOptions& ro = {});

  Kind kind() const { return kind_; }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  /// N'D - ND' with the pole-derived common factors still present.
  const Polynomial& critical_numerator() const { return crit_num_; }
  const std::vector<Complex>& blaschke_b1() const { return b1_; }
  const std::vector<Complex>& blaschke_b2() const { return b2_; }

  FnValue eval(Complex z) const;
  FnValue eval_derivative(Complex z) const;
  /// |f(z)|, +inf at poles.
  double abs(Complex z) const;
  /// log |f(z)|; -inf at zeros, +inf at poles.
  double log_abs(Complex z) const;
  /// f'(z)/f(z) = N'/N - D'/D.
  Complex log_derivative(Complex z) const;
  /// Taylor coefficients of f(c + t) up to order `order` (c not a pole).
  std::vector<Complex> taylor(Complex c, int order) const;

  const std::vector<RootMult>& zeros() const { return zeros_; }
  const std::vector<RootMult>& poles() const { return poles_; }
  /// Zeros of f' with mult(z), excluding the factors shared with the poles.
  const std::vector<RootMult>& critical_points() const { return critical_; }

  std::vector<RootMult> zeros_in(const DomainSpec& d) const;
  std::vector<RootMult> poles_in(const DomainSpec& d) const;
  std::vector<RootMult> critical_points_in(const DomainSpec& d) const;

  /// Degree of N'D - ND' after removing the factors it shares with D.
  int reduced_critical_degree() const;
  /// max(1, largest modulus among zeros, poles and critical points in d).
  double scale(const DomainSpec& d) const;
  /// Bound R with every solution of |f(z)| = eps inside |z| <= R.
  double level_radius_bound(double eps) const;

  /// Source spec string when built by the parser; empty otherwise.
  const std::string& spec() const { return spec_; }
  void set_spec(std::string s) { spec_ = std::move(s); }

 private:
  void finalize(const RootOptions& ro);

  Kind kind_ = Kind::Polynomial;
  Polynomial num_, den_, dnum_, dden_, crit_num_;
  std::vector<Complex> b1_, b2_;
  std::vector<RootMult> zeros_, poles_, critical_;
  std::string spec_;
};

/// Checks that (f, domain) is a legal combination. UnitDisk requires a
/// Blaschke ratio with deg B1 != deg B2.
void validate_domain(const RationalFn& f, const DomainSpec& d);

/// Parses `poly:c_n,...,c_0`, `rat:<poly>/<poly>`, `blaschke:z1,.../w1,...`.
RationalFn parse_function(const std::string& spec, const RootOptions& ro = {});
/// Parses `plane`, `disk`, `rect:x0,y0,x1,y1`.
DomainSpec parse_domain(const std::string& spec);
/// Parses a complex literal such as `1`, `-2.5i`, `0.3-0.4i`, `i`.
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

}  // namespace lvl
