#include "bour/invariants.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <string>

#include "bour/error.hpp"

namespace bour {

namespace {

constexpr double kMixedStep = 1e-5;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binomial(int n, int r) {
  double b = 1.0;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

void require_ladder(const EdgeData& d, int upto) {
  const double thr = d.zero_threshold();
  for (int j = 1; j <= upto; ++j) {
    const double v = d.U_derivative0(d.n() + j);
    if (std::abs(v) > thr) {
      throw Error(Errc::ladder_violated,
                  "U^(" + std::to_string(d.n() + j) + ")(0) = " + format_short(v));
    }
  }
}

// t-derivatives of Psi(0, t): the singular curve is the helix at s = 0.
struct SingularCurve {
  Vec3 psi_t;
  Vec3 psi_tt;
};

SingularCurve singular_curve(const EdgeData& d, double t) {
  const Jet th = (d.eps1() / d.m()) * Jet::variable(t, 2);
  const double x0 = x_of_s(d, 0.0);
  Jet sn, cs;
  sincos(th, sn, cs);
  const Jet c[3] = {x0 * cs, x0 * sn, d.h() * th};
  SingularCurve out;
  for (int a = 0; a < 3; ++a) {
    out.psi_t[a] = c[a].derivative(1);
    out.psi_tt[a] = c[a].derivative(2);
  }
  return out;
}

// Psi_{s^j}(0, t) for j = 0..order.
std::vector<Vec3> s_derivatives(const EdgeData& d, double t, int order) {
  const auto jets = psi_jet_at_zero(d, t, order);
  std::vector<Vec3> out(order + 1);
  for (int j = 0; j <= order; ++j) {
    for (int a = 0; a < 3; ++a) out[j][a] = jets[a].derivative(j);
  }
  return out;
}

Vec3 mixed_derivative(const EdgeData& d, double t, int n) {
  auto central = [&](double h) {
    const Vec3 p = s_derivatives(d, t + h, n)[n];
    const Vec3 m = s_derivatives(d, t - h, n)[n];
    return Vec3((p - m) / (2.0 * h));
  };
  const Vec3 coarse = central(kMixedStep);
  const Vec3 fine = central(0.5 * kMixedStep);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double InvariantPair::discrepancy() const { return std::abs(closed - oracle); }

bool ladder_vanishes(const EdgeData& d, int upto) {
  const double thr = d.zero_threshold();
  for (int j = 1; j <= upto; ++j) {
    if (std::abs(d.U_derivative0(d.n() + j)) > thr) return false;
  }
  return true;
}

double kappa_nu(const EdgeData& d) {
  const double mu = d.m() * d.U0();
  return rho(d, 0.0) / (mu * mu);
}

double kappa_t(const EdgeData& d) {
  const double mu = d.m() * d.U0();
  return d.h() / (mu * mu);
}

double omega(const EdgeData& d, int i) {
  const int n = d.n();
  if (i < 1 || i >= n) {
    throw Error(Errc::invalid_argument,
                "omega is defined for 1 <= i <= n-1; use beta for i = n");
  }
  require_ladder(d, i - 1);
  const double num = d.eps1() * d.eps2() * d.m() * d.m() * d.U0() * d.U_derivative0(n + i);
  return num / (std::pow(factorial(n - 1), static_cast<double>(n + i) / n) * rho(d, 0.0));
}

double beta(const EdgeData& d) {
  const int n = d.n();
  require_ladder(d, n - 1);
  const double m2 = d.m() * d.m();
  const double u0 = d.U0();
  const double f = factorial(n - 1);
  const double a = m2 * u0 * d.U_derivative0(2 * n) / (f * f);
  const double b = binomial(2 * n - 1, n) * d.h() * d.h() / (m2 * u0 * u0);
  return d.eps1() * d.eps2() * (a - b) / rho(d, 0.0);
}

Vec3 unit_normal_at_singular(const EdgeData& d, double t) {
  const double th = d.eps1() * t / d.m();
  const double x0 = x_of_s(d, 0.0);
  const double r0 = rho(d, 0.0);
  const double hmv = d.h() * d.m() * d.V0();
  const double c = std::cos(th);
  const double s = std::sin(th);
  const int e2 = d.eps2();
  return (-e2 / x0) * Vec3(e2 * r0 * c - hmv * s, e2 * r0 * s + hmv * c, -d.m() * d.V0() * x0);
}

double kappa_nu_numeric(const EdgeData& d, double t) {
  const SingularCurve sc = singular_curve(d, t);
  return sc.psi_tt.dot(unit_normal_at_singular(d, t)) / sc.psi_t.squaredNorm();
}

double kappa_t_numeric(const EdgeData& d, double t) {
  const int n = d.n();
  const SingularCurve sc = singular_curve(d, t);
  const Vec3 pn = s_derivatives(d, t, n)[n];
  const Vec3 pnt = mixed_derivative(d, t, n);
  const double cross2 = sc.psi_t.cross(pn).squaredNorm();
  const double first = det3(sc.psi_t, pn, pnt) / cross2;
  const double second = sc.psi_t.dot(pn) * det3(sc.psi_t, pn, sc.psi_tt) /
                        (sc.psi_t.squaredNorm() * cross2);
  return first - second;
}

double omega_numeric(const EdgeData& d, int i, double t) {
  const int n = d.n();
  if (i < 1 || i > n) throw Error(Errc::invalid_argument, "omega oracle needs 1 <= i <= n");
  require_ladder(d, i - 1);
  const SingularCurve sc = singular_curve(d, t);
  const std::vector<Vec3> ds = s_derivatives(d, t, n + i);
  const double num = std::pow(sc.psi_t.norm(), static_cast<double>(n + i) / n) *
                     det3(sc.psi_t, ds[n], ds[n + i]);
  const double den =
      std::pow(sc.psi_t.cross(ds[n]).norm(), static_cast<double>(2 * n + i) / n);
  return num / den;
}

double beta_numeric(const EdgeData& d, double t) { return omega_numeric(d, d.n(), t); }

InvariantReport compute_invariants(const EdgeData& d) {
  InvariantReport r;
  r.kappa_nu = {kappa_nu(d), kappa_nu_numeric(d)};
  r.kappa_t = {kappa_t(d), kappa_t_numeric(d)};
  r.max_discrepancy = std::max(r.kappa_nu.discrepancy(), r.kappa_t.discrepancy());
  const int n = d.n();
  bool ladder = true;
  for (int i = 1; i < n && ladder; ++i) {
    OmegaEntry e{i, omega(d, i), omega_numeric(d, i)};
    r.max_discrepancy = std::max(r.max_discrepancy, std::abs(e.closed - e.oracle));
    r.omegas.push_back(e);
    ladder = ladder_vanishes(d, i);
  }
  if (ladder) {
    r.beta = InvariantPair{beta(d), beta_numeric(d)};
    r.max_discrepancy = std::max(r.max_discrepancy, r.beta->discrepancy());
  }
  return r;
}

}  // namespace bour
