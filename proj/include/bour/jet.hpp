#pragma once

#include <array>
#include <vector>

namespace bour {

inline constexpr int kMaxJetOrder = 32;

// Truncated Taylor expansion c_0 + c_1 (x-b) + ... + c_M (x-b)^M at base b.
// Coefficients are stored as f^(i)(b)/i!.
class Jet {
 public:
  Jet() = default;
  Jet(double base, int order);

  static Jet constant(double base, int order, double value);
  static Jet variable(double base, int order);
  static Jet from_coefficients(double base, const std::vector<double>& coeffs);
  static Jet from_derivatives(double base, const std::vector<double>& derivs);

  double base() const { return base_; }
  int order() const { return order_; }
  double value() const { return c_[0]; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  // i-th derivative at the base, i! * c_i.
  double derivative(int i) const;
  std::vector<double> coefficients() const;
  std::vector<double> derivatives() const;
  double max_abs_coefficient() const;

  // Evaluates the truncated polynomial at x.
  double evaluate(double x) const;

  Jet truncated(int order) const;
  Jet differentiated() const;
  Jet integrated(double constant = 0.0) const;
  // Multiplies by (x-b)^k; the order grows by k.
  Jet times_power(int k) const;
  // Re-expands the truncated polynomial about another base.
  Jet rebased(double new_base) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double v);
  Jet& operator-=(double v);
  Jet& operator*=(double v);
  Jet& operator/=(double v);

 private:
  void require_compatible(const Jet& o) const;

  double base_ = 0.0;
  int order_ = 0;
  std::array<double, kMaxJetOrder + 1> c_{};
};

Jet operator-(const Jet& a);
Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double b);
Jet operator+(double a, Jet b);
Jet operator-(Jet a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(Jet a, double b);
Jet operator*(double a, Jet b);
Jet operator/(Jet a, double b);
Jet operator/(double a, const Jet& b);

Jet reciprocal(const Jet& g);
Jet sqrt(const Jet& f);
Jet exp(const Jet& f);
Jet sin(const Jet& f);
Jet cos(const Jet& f);
void sincos(const Jet& f, Jet& s, Jet& c);
Jet pow(const Jet& f, int n);
Jet pow(const Jet& f, double a);

// outer(inner(x)); requires inner.value() == outer.base().
Jet compose(const Jet& outer, const Jet& inner);
// Series reversion: jet of g^{-1} at g(b). Throws not_diffeo if |g'(b)| <= tol.
Jet invert(const Jet& g, double tol = 1e-12);

// Quotient f(x)/(x-b)^k of a jet whose first k coefficients vanish within tol.
// A negative tol selects 1e-9 times the largest retained coefficient.
Jet jet_divide_by_power(const Jet& j, int k, double tol = -1.0);

}  // namespace bour
