#include "bour/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bour/error.hpp"

namespace bour {

namespace {

constexpr double kDivisionFloor = 1e-14;

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(Errc::invalid_argument,
                "jet order " + std::to_string(order) + " outside [0, " +
                    std::to_string(kMaxJetOrder) + "]");
  }
}

}  // namespace

Jet::Jet(double base, int order) : base_(base), order_(order) { check_order(order); }

Jet Jet::constant(double base, int order, double value) {
  Jet j(base, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double base, int order) {
  Jet j(base, order);
  j.c_[0] = base;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_coefficients(double base, const std::vector<double>& coeffs) {
  if (coeffs.empty()) throw Error(Errc::invalid_argument, "empty coefficient list");
  Jet j(base, static_cast<int>(coeffs.size()) - 1);
  std::copy(coeffs.begin(), coeffs.end(), j.c_.begin());
  return j;
}

Jet Jet::from_derivatives(double base, const std::vector<double>& derivs) {
  std::vector<double> c(derivs);
  double f = 1.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    f *= static_cast<double>(i);
    c[i] /= f;
  }
  return from_coefficients(base, c);
}

double Jet::derivative(int i) const {
  double f = 1.0;
  for (int q = 2; q <= i; ++q) f *= q;
  return c_[i] * f;
}

std::vector<double> Jet::coefficients() const {
  return std::vector<double>(c_.begin(), c_.begin() + order_ + 1);
}

std::vector<double> Jet::derivatives() const {
  std::vector<double> d(order_ + 1);
  for (int i = 0; i <= order_; ++i) d[i] = derivative(i);
  return d;
}

double Jet::max_abs_coefficient() const {
  double m = 0.0;
  for (int i = 0; i <= order_; ++i) m = std::max(m, std::abs(c_[i]));
  return m;
}

double Jet::evaluate(double x) const {
  const double d = x - base_;
  double r = c_[order_];
  for (int i = order_ - 1; i >= 0; --i) r = r * d + c_[i];
  return r;
}

Jet Jet::truncated(int order) const {
  if (order > order_) {
    throw Error(Errc::invalid_argument, "cannot raise jet order by truncation");
  }
  Jet j(base_, order);
  std::copy(c_.begin(), c_.begin() + order + 1, j.c_.begin());
  return j;
}

Jet Jet::differentiated() const {
  Jet j(base_, std::max(order_ - 1, 0));
  for (int i = 1; i <= order_; ++i) j.c_[i - 1] = i * c_[i];
  return j;
}

Jet Jet::integrated(double constant) const {
  Jet j(base_, order_ + 1);
  j.c_[0] = constant;
  for (int i = 0; i <= order_; ++i) j.c_[i + 1] = c_[i] / (i + 1);
  return j;
}

Jet Jet::times_power(int k) const {
  if (k < 0) throw Error(Errc::invalid_argument, "negative power");
  Jet j(base_, order_ + k);
  for (int i = 0; i <= order_; ++i) j.c_[i + k] = c_[i];
  return j;
}

Jet Jet::rebased(double new_base) const {
  // Repeated synthetic division by (x - new_base).
  Jet j = *this;
  j.base_ = new_base;
  const double d = new_base - base_;
  for (int lo = 0; lo < order_; ++lo) {
    for (int i = order_ - 1; i >= lo; --i) j.c_[i] += d * j.c_[i + 1];
  }
  return j;
}

void Jet::require_compatible(const Jet& o) const {
  if (base_ != o.base_ || order_ != o.order_) {
    throw Error(Errc::invalid_argument, "jets differ in base or order");
  }
}

Jet& Jet::operator+=(const Jet& o) {
  require_compatible(o);
  for (int i = 0; i <= order_; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  require_compatible(o);
  for (int i = 0; i <= order_; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet& Jet::operator+=(double v) {
  c_[0] += v;
  return *this;
}

Jet& Jet::operator-=(double v) {
  c_[0] -= v;
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (int i = 0; i <= order_; ++i) c_[i] *= v;
  return *this;
}

Jet& Jet::operator/=(double v) {
  for (int i = 0; i <= order_; ++i) c_[i] /= v;
  return *this;
}

Jet operator-(const Jet& a) { return a * -1.0; }
Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
  if (a.base() != b.base() || a.order() != b.order()) {
    throw Error(Errc::invalid_argument, "jets differ in base or order");
  }
  const int m = a.order();
  Jet r(a.base(), m);
  for (int n = 0; n <= m; ++n) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += a[j] * b[n - j];
    r[n] = s;
  }
  return r;
}

Jet operator/(const Jet& f, const Jet& g) {
  if (f.base() != g.base() || f.order() != g.order()) {
    throw Error(Errc::invalid_argument, "jets differ in base or order");
  }
  if (std::abs(g[0]) < kDivisionFloor) {
    throw Error(Errc::domain, "division by a jet vanishing at its base");
  }
  const int m = f.order();
  Jet q(f.base(), m);
  for (int n = 0; n <= m; ++n) {
    double s = f[n];
    for (int j = 1; j <= n; ++j) s -= g[j] * q[n - j];
    q[n] = s / g[0];
  }
  return q;
}

Jet operator+(Jet a, double b) { return a += b; }
Jet operator+(double a, Jet b) { return b += a; }
Jet operator-(Jet a, double b) { return a -= b; }
Jet operator-(double a, const Jet& b) { return -b + a; }
Jet operator*(Jet a, double b) { return a *= b; }
Jet operator*(double a, Jet b) { return b *= a; }
Jet operator/(Jet a, double b) { return a /= b; }
Jet operator/(double a, const Jet& b) { return a * reciprocal(b); }

Jet reciprocal(const Jet& g) { return Jet::constant(g.base(), g.order(), 1.0) / g; }

Jet sqrt(const Jet& f) {
  const int m = f.order();
  if (f[0] < 0.0 || (f[0] == 0.0 && m > 0)) {
    throw Error(Errc::domain, "sqrt of a jet that is negative or zero at its base");
  }
  Jet g(f.base(), m);
  g[0] = std::sqrt(f[0]);
  for (int n = 1; n <= m; ++n) {
    double s = f[n];
    for (int j = 1; j < n; ++j) s -= g[j] * g[n - j];
    g[n] = s / (2.0 * g[0]);
  }
  return g;
}

Jet exp(const Jet& f) {
  const int m = f.order();
  Jet g(f.base(), m);
  g[0] = std::exp(f[0]);
  for (int n = 1; n <= m; ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += j * f[j] * g[n - j];
    g[n] = s / n;
  }
  return g;
}

void sincos(const Jet& f, Jet& s, Jet& c) {
  const int m = f.order();
  s = Jet(f.base(), m);
  c = Jet(f.base(), m);
  s[0] = std::sin(f[0]);
  c[0] = std::cos(f[0]);
  for (int n = 1; n <= m; ++n) {
    double a = 0.0;
    double b = 0.0;
    for (int j = 1; j <= n; ++j) {
      a += j * f[j] * c[n - j];
      b += j * f[j] * s[n - j];
    }
    s[n] = a / n;
    c[n] = -b / n;
  }
}

Jet sin(const Jet& f) {
  Jet s, c;
  sincos(f, s, c);
  return s;
}

Jet cos(const Jet& f) {
  Jet s, c;
  sincos(f, s, c);
  return c;
}

Jet pow(const Jet& f, int n) {
  if (n < 0) return reciprocal(pow(f, -n));
  Jet result = Jet::constant(f.base(), f.order(), 1.0);
  Jet b = f;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return result;
}

Jet pow(const Jet& f, double a) {
  if (a == std::floor(a) && std::abs(a) < 1e6) return pow(f, static_cast<int>(a));
  if (f[0] <= 0.0) throw Error(Errc::domain, "real power of a non-positive jet");
  const int m = f.order();
  Jet g(f.base(), m);
  g[0] = std::pow(f[0], a);
  for (int n = 1; n <= m; ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += ((a + 1.0) * j - n) * f[j] * g[n - j];
    g[n] = s / (n * f[0]);
  }
  return g;
}

Jet compose(const Jet& outer, const Jet& inner) {
  if (std::abs(inner[0] - outer.base()) > 1e-12 * std::max(1.0, std::abs(outer.base()))) {
    throw Error(Errc::invalid_argument, "inner jet does not map onto the outer base");
  }
  const int m = std::min(outer.order(), inner.order());
  Jet d = inner.truncated(m);
  d[0] = 0.0;
  Jet r = Jet::constant(inner.base(), m, outer[m]);
  for (int i = m - 1; i >= 0; --i) {
    r = r * d;
    r[0] += outer[i];
  }
  return r;
}

Jet invert(const Jet& g, double tol) {
  if (std::abs(g[1]) <= tol || g.order() < 1) {
    throw Error(Errc::not_diffeo, "derivative vanishes at the base");
  }
  const int m = g.order();
  const double y0 = g[0];
  // h(y) with h(y0) = base and g(h(y)) = y; each sweep fixes one more order.
  Jet h = Jet::variable(y0, m);
  h = (h - y0) / g[1] + g.base();
  Jet id = Jet::variable(y0, m);
  for (int it = 0; it < m; ++it) {
    Jet residual = compose(g, h) - id;
    h -= residual / g[1];
  }
  return h;
}

Jet jet_divide_by_power(const Jet& j, int k, double tol) {
  if (k < 0 || k > j.order()) {
    throw Error(Errc::invalid_argument, "power outside the jet order");
  }
  if (tol < 0.0) tol = 1e-9 * j.max_abs_coefficient();
  for (int i = 0; i < k; ++i) {
    if (std::abs(j[i]) > tol) {
      throw Error(Errc::not_divisible,
                  "coefficient " + std::to_string(i) + " does not vanish");
    }
  }
  Jet q(j.base(), j.order() - k);
  for (int i = 0; i <= q.order(); ++i) q[i] = j[i + k];
  return q;
}

}  // namespace bour
