#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lvl {

using Complex = std::complex<double>;

/// Dense polynomial with complex coefficients stored in ascending degree.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> ascending);

  static Polynomial constant(Complex c);
  static Polynomial monomial(int n, Complex c = 1.0);
  static Polynomial from_roots(std::span<const Complex> roots, Complex lead = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(int i) const;
  Complex leading() const;

  Complex operator()(Complex z) const;
  /// Value and first derivative in one Horner pass.
  void eval_with_derivative(Complex z, Complex& value, Complex& deriv) const;
  /// Sum |c_i| r^i: the rounding-error scale of a Horner evaluation at |z| = r.
  double abs_bound(double r) const;
  double max_abs_coeff() const;

  Polynomial derivative() const;
  /// Coefficients of p(c + t) in t.
  Polynomial taylor_shift(Complex c) const;
  /// Drops leading coefficients with |c| <= rel * max|c|.
  Polynomial trimmed(double rel) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);

 private:
  void normalize();
  std::vector<Complex> coeffs_;
};

}  // namespace lvl
