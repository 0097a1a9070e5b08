#include "bour/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bour/error.hpp"
#include "bour/numeric.hpp"

namespace bour {

namespace {

constexpr int kNearZeroOrder = 16;

void require_in_J(const EdgeData& d, double s) {
  if (!d.J().contains(s)) throw Error(Errc::invalid_argument, "s outside J");
}

double x_squared(const EdgeData& d, double s) {
  const double mu = d.m() * d.U_at(s);
  const double r = mu * mu - d.h() * d.h();
  if (!(r > 0.0)) throw Error(Errc::negative_radicand, "m^2 U^2 - h^2 <= 0");
  return r;
}

// Integrands of z / (eps2 m) and of beta / (-eps2 h / m).
double z_integrand(const EdgeData& d, double s) {
  const double u = d.U_at(s);
  return std::pow(s, d.k()) * u * rho(d, s) / x_squared(d, s);
}

double beta_integrand(const EdgeData& d, double s) {
  return std::pow(s, d.k()) * rho(d, s) / (d.U_at(s) * x_squared(d, s));
}

struct IntegrandJets {
  Jet dz;     // z'(s)
  Jet dbeta;  // beta'(s)
};

// Derivative jets of z and beta at base s, of the given order.
IntegrandJets integrand_jets(const EdgeData& d, double s, int order) {
  const double m = d.m();
  const double h = d.h();
  // At 0 the s^k factor is applied by shifting so that only order-k terms of
  // the smooth part are needed.
  const bool at_zero = (s == 0.0);
  const int inner = at_zero ? order - d.k() : order;
  if (inner < 0) {
    return {Jet(s, order), Jet(s, order)};
  }
  const Jet U = d.U_jet(s, inner);
  const Jet V = d.V_jet(s, inner);
  const Jet mU = m * U;
  const Jet x2 = mU * mU - h * h;
  const Jet mUV = m * mU * V;
  const Jet r = sqrt(x2 - mUV * mUV);
  Jet gz = U * r / x2;
  Jet gb = r / (U * x2);
  if (at_zero) {
    gz = gz.times_power(d.k());
    gb = gb.times_power(d.k());
  } else {
    const Jet sk = pow(Jet::variable(s, order), d.k());
    gz = gz * sk;
    gb = gb * sk;
  }
  return {d.eps2() * m * gz, (-d.eps2() * h / m) * gb};
}

double beta_of_s(const EdgeData& d, double s, double tol) {
  if (s == 0.0 || d.h() == 0.0) return 0.0;
  if (std::abs(s) < kJetRadius) {
    return profile_jets(d, 0.0, kNearZeroOrder).beta.evaluate(s);
  }
  QuadratureOptions q;
  q.abs_tol = tol / std::max(1.0, std::abs(d.h()));
  const double I = integrate([&](double x) { return beta_integrand(d, x); }, 0.0, s, q);
  return -d.eps2() * d.h() * I / d.m();
}

}  // namespace

double x_of_s(const EdgeData& d, double s) {
  require_in_J(d, s);
  return d.eps0() * std::sqrt(x_squared(d, s));
}

double z_of_s(const EdgeData& d, double s, double tol) {
  require_in_J(d, s);
  if (s == 0.0) return 0.0;
  if (std::abs(s) < kJetRadius) {
    return profile_jets(d, 0.0, kNearZeroOrder).z.evaluate(s);
  }
  QuadratureOptions q;
  q.abs_tol = tol / std::max(1.0, d.m());
  const double I = integrate([&](double x) { return z_integrand(d, x); }, 0.0, s, q);
  return d.eps2() * d.m() * I;
}

double theta(const EdgeData& d, double s, double t, double tol) {
  require_in_J(d, s);
  return d.eps1() * t / d.m() + beta_of_s(d, s, tol);
}

SurfacePoint psi(const EdgeData& d, double s, double t, double tol) {
  const double x = x_of_s(d, s);
  const double z = z_of_s(d, s, tol);
  const double th = theta(d, s, t, tol);
  SurfacePoint p;
  p.position = Vec3(x * std::cos(th), x * std::sin(th), z + d.h() * th);
  p.s = s;
  p.t = t;
  p.singular = std::abs(s) < kSingularThreshold;
  return p;
}

ProfileJets profile_jets(const EdgeData& d, double s, int order, double tol) {
  if (order < 1 || order > kMaxJetOrder) throw Error(Errc::invalid_argument, "bad jet order");
  require_in_J(d, s);
  const Jet U = d.U_jet(s, order);
  const Jet mU = d.m() * U;
  ProfileJets out;
  out.x = d.eps0() * sqrt(mU * mU - d.h() * d.h());
  const IntegrandJets g = integrand_jets(d, s, order - 1);
  const double z0 = (s == 0.0) ? 0.0 : z_of_s(d, s, tol);
  const double b0 = (s == 0.0) ? 0.0 : beta_of_s(d, s, tol);
  out.z = g.dz.integrated(z0);
  out.beta = g.dbeta.integrated(b0);
  return out;
}

std::array<Jet, 2> profile_velocity_jets(const EdgeData& d, double s, int order) {
  if (order < 0 || order >= kMaxJetOrder) throw Error(Errc::invalid_argument, "bad jet order");
  require_in_J(d, s);
  const Jet mU = d.m() * d.U_jet(s, order + 1);
  const Jet x = d.eps0() * sqrt(mU * mU - d.h() * d.h());
  return {x.differentiated(), integrand_jets(d, s, order).dz};
}

std::array<Jet, 3> psi_jet_at_zero(const EdgeData& d, double t, int order) {
  const ProfileJets pj = profile_jets(d, 0.0, order);
  const Jet th = pj.beta + d.eps1() * t / d.m();
  Jet sn, cs;
  sincos(th, sn, cs);
  return {pj.x * cs, pj.x * sn, pj.z + d.h() * th};
}

SurfaceFrame psi_frame(const EdgeData& d, double s, double t, double tol) {
  require_in_J(d, s);
  const double m = d.m();
  const double h = d.h();
  const double u = d.U_at(s);
  const double x2 = x_squared(d, s);
  const double x = d.eps0() * std::sqrt(x2);
  const double sk = std::pow(s, d.k());
  const double r = rho(d, s);
  const double dx = m * m * u * d.dU_at(s) / x;
  const double dz = d.eps2() * m * sk * u * r / x2;
  const double th_s = -d.eps2() * h * sk * r / (m * u * x2);
  const double th_t = d.eps1() / m;
  const double th = theta(d, s, t, tol);
  const double c = std::cos(th);
  const double sn = std::sin(th);

  SurfaceFrame f;
  f.position = Vec3(x * c, x * sn, z_of_s(d, s, tol) + h * th);
  f.psi_s = Vec3(dx * c - x * sn * th_s, dx * sn + x * c * th_s, dz + h * th_s);
  f.psi_t = th_t * Vec3(-x * sn, x * c, h);
  return f;
}

FundamentalForm first_fundamental_form(const EdgeData& d, double s, double t, double tol) {
  const SurfaceFrame f = psi_frame(d, s, t, tol);
  return {f.psi_s.squaredNorm(), f.psi_s.dot(f.psi_t), f.psi_t.squaredNorm()};
}

Interval default_t_range(const EdgeData& d) { return {0.0, 2.0 * std::numbers::pi * d.m()}; }

Mesh sample_mesh(const EdgeData& d, Interval s_range, Interval t_range, int rows, int cols,
                 double tol) {
  if (rows < 2 || cols < 2) throw Error(Errc::invalid_argument, "mesh needs at least 2x2 samples");
  if (!(s_range.lo < s_range.hi) || !(t_range.lo < t_range.hi)) {
    throw Error(Errc::invalid_argument, "mesh ranges must be proper intervals");
  }
  if (!d.J().contains(s_range.lo) || !d.J().contains(s_range.hi)) {
    throw Error(Errc::invalid_argument, "s range outside J");
  }
  auto grid = [](Interval r, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = (i == n - 1) ? r.hi : r.lo + r.width() * i / (n - 1);
    return v;
  };
  std::vector<double> ss = grid(s_range, rows);
  const std::vector<double> ts = grid(t_range, cols);

  Mesh mesh;
  mesh.rows = rows;
  mesh.cols = cols;
  if (s_range.contains(0.0)) {
    // Snap the nearest row onto the singular curve; it moves by at most half a step.
    auto it = std::min_element(ss.begin(), ss.end(),
                               [](double a, double b) { return std::abs(a) < std::abs(b); });
    *it = 0.0;
    mesh.singular_row = static_cast<int>(it - ss.begin());
  }
  mesh.points.resize(static_cast<std::size_t>(rows) * cols);
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t r) {
    const double s = ss[r];
    const double x = x_of_s(d, s);
    const double z = z_of_s(d, s, tol);
    const double b = beta_of_s(d, s, tol);
    for (int c = 0; c < cols; ++c) {
      const double th = d.eps1() * ts[c] / d.m() + b;
      SurfacePoint& p = mesh.points[r * cols + c];
      p.position = Vec3(x * std::cos(th), x * std::sin(th), z + d.h() * th);
      p.s = s;
      p.t = ts[c];
      p.singular = std::abs(s) < kSingularThreshold;
    }
  });
  return mesh;
}

}  // namespace bour
