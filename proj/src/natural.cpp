#include "bour/natural.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bour/error.hpp"

namespace bour {

namespace {

constexpr int kJetOrder = 12;

// Speed squared q = x'^2 + z'^2 and its derivative.
std::pair<double, double> speed2(const HelicoidalInput& in, double u) {
  const auto v = in.velocity(u, 1);
  double q = 0.0;
  double dq = 0.0;
  for (const Jet& c : v) {
    q += c[0] * c[0];
    dq += 2.0 * c[0] * c[1];
  }
  return {q, dq};
}

}  // namespace

HelicoidalInput HelicoidalInput::from_expressions(const SmoothFn& x, const SmoothFn& z, double h,
                                                  Interval interval) {
  HelicoidalInput in;
  in.x = [x](double u) { return x(u); };
  in.velocity = [x, z](double u, int order) {
    return std::vector<Jet>{x.jet(u, order + 1).differentiated(),
                            z.jet(u, order + 1).differentiated()};
  };
  in.h = h;
  in.interval = interval;
  return in;
}

HelicoidalInput HelicoidalInput::from_edge(const EdgeData& data) {
  HelicoidalInput in;
  in.x = [data](double s) { return x_of_s(data, s); };
  in.velocity = [data](double s, int order) {
    const auto v = profile_velocity_jets(data, s, order);
    return std::vector<Jet>{v[0], v[1]};
  };
  in.h = data.h();
  in.interval = data.J();
  return in;
}

Jet HelicoidalInput::x_jet(double u, int order) const {
  if (order == 0) return Jet::constant(u, 0, x(u));
  return velocity(u, order - 1)[0].integrated(x(u));
}

std::vector<double> uniform_probes(double lo, double hi, int n) {
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = (n == 1) ? lo : (i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
  return p;
}

std::vector<double> singular_set(const HelicoidalInput& in, int n_samples) {
  if (n_samples < 64) throw Error(Errc::invalid_argument, "at least 64 samples required");
  const std::vector<double> u = uniform_probes(in.interval.lo, in.interval.hi, n_samples);
  std::vector<double> q(u.size());
  double qmax = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    q[i] = speed2(in, u[i]).first;
    qmax = std::max(qmax, q[i]);
  }
  const double accept = 1e-10 * std::max(1.0, qmax);
  std::vector<double> roots;
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    if (!(q[i] < q[i - 1] && q[i] <= q[i + 1])) continue;
    double a = u[i - 1];
    double b = u[i + 1];
    double at = u[i];
    if (speed2(in, a).second < 0.0 && speed2(in, b).second > 0.0) {
      while (b - a > 1e-12) {
        const double mid = 0.5 * (a + b);
        if (speed2(in, mid).second < 0.0) {
          a = mid;
        } else {
          b = mid;
        }
      }
      at = 0.5 * (a + b);
    }
    if (speed2(in, at).first <= accept &&
        (roots.empty() || at - roots.back() > 1e-9)) {
      roots.push_back(at);
    }
  }
  return roots;
}

GenericityReport check_generic(const HelicoidalInput& in, double u0, int k, double tol) {
  GenericityReport r;
  if (k < 1) {
    r.diagnostics.push_back("k must be at least 1");
    return r;
  }
  const auto v = in.velocity(u0, k + 1);
  const double x0 = in.x(u0);
  double scale = std::abs(x0);
  for (const Jet& c : v) scale = std::max(scale, c.max_abs_coefficient());
  const double band = tol * std::max(scale, 1e-300);
  if (std::abs(x0) <= band) r.diagnostics.push_back("axis intersection: x(u0) = 0");
  const char* names[2] = {"x", "z"};
  for (int i = 1; i <= k; ++i) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs(v[c][i - 1]) > band) {
        r.diagnostics.push_back(std::string(names[c]) + "^(" + std::to_string(i) +
                                ")(u0) != 0");
      }
    }
  }
  if (std::abs(v[1][k]) <= band) {
    r.diagnostics.push_back("z^(" + std::to_string(k + 1) + ")(u0) = 0");
  }
  r.generic = r.diagnostics.empty();
  return r;
}

double NaturalChart::phi_of_u(double u) const { return phi_table_(u); }

double NaturalChart::U_of_s(double s) const { return U_table_(s); }

std::array<Vec3, 2> NaturalChart::sheared_partials(double u, double w) const {
  const auto vel = input_.velocity(u, 0);
  const double dx = vel[0][0];
  const double dz = vel[1][0];
  const double x = input_.x(u);
  const double v = w - phi_of_u(u);
  const double dphi = h_ * dz / (x * x + h_ * h_);
  const Vec3 fu(dx * std::cos(v), dx * std::sin(v), dz);
  const Vec3 fv(-x * std::sin(v), x * std::cos(v), h_);
  return {Vec3(fu - dphi * fv), fv};
}

FundamentalForm NaturalChart::fundamental_form(double s) const {
  const double u = u_of_s(s);
  const double duds = canonical_.du_ds(s);
  const auto p = sheared_partials(u, 0.0);
  return {p[0].squaredNorm() * duds * duds, p[0].dot(p[1]) * duds, p[1].squaredNorm()};
}

NaturalChart natural_coordinates(const HelicoidalInput& in, double u0, int k, int n_tab) {
  const GenericityReport g = check_generic(in, u0, k);
  if (!g.generic) {
    std::string msg;
    for (const auto& d : g.diagnostics) msg += (msg.empty() ? "" : "; ") + d;
    throw Error(Errc::not_generic, msg);
  }
  const double h = in.h;

  // |f~_u|^2 = x'^2 + z'^2 x^2 / (x^2 + h^2): the sheared profile velocity.
  VelocityJets sheared = [in, h](double u, int order) {
    const auto v = in.velocity(u, order);
    const Jet x = v[0].integrated(in.x(u)).truncated(order);
    const Jet factor = x / sqrt(x * x + h * h);
    return std::vector<Jet>{v[0], v[1] * factor};
  };

  NaturalChart chart;
  chart.input_ = in;
  chart.u0_ = u0;
  chart.k_ = k;
  chart.h_ = h;
  chart.canonical_ = canonical_parameter(sheared, u0, k, in.interval, n_tab);

  const std::vector<double>& u = chart.canonical_.u_nodes();
  const std::vector<double>& s = chart.canonical_.s_nodes();
  const std::vector<double>& dsdu = chart.canonical_.dsdu_nodes();
  const std::size_t n = u.size();
  const auto i0 = static_cast<std::size_t>(std::find(u.begin(), u.end(), u0) - u.begin());

  auto dphi = [&](double x) {
    const double xv = in.x(x);
    return h * in.velocity(x, 0)[1][0] / (xv * xv + h * h);
  };
  std::vector<double> phi(n, 0.0);
  std::vector<double> phi_slope(n, 0.0);
  if (h != 0.0) {
    for (std::size_t i = i0 + 1; i < n; ++i) phi[i] = phi[i - 1] + integrate(dphi, u[i - 1], u[i]);
    for (std::size_t i = i0; i-- > 0;) phi[i] = phi[i + 1] - integrate(dphi, u[i], u[i + 1]);
    for (std::size_t i = 0; i < n; ++i) phi_slope[i] = dphi(u[i]);
  }

  std::vector<double> U(n);
  std::vector<double> dU(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = in.x(u[i]);
    const double dx = in.velocity(u[i], 0)[0][0];
    U[i] = std::sqrt(x * x + h * h);
    dU[i] = x * dx / (U[i] * dsdu[i]);
  }
  chart.phi_ = phi;
  chart.U_ = U;
  chart.phi_table_ = HermiteTable(u, phi, phi_slope);
  chart.U_table_ = HermiteTable(s, U, dU);

  const Jet xj = in.x_jet(u0, kJetOrder);
  const Jet Uu = sqrt(xj * xj + h * h);
  const Jet sj = chart.canonical_.s_jet();
  const Jet us = invert(sj.truncated(std::min(sj.order(), kJetOrder)));
  chart.U_jet0_ = compose(Uu, us);
  return chart;
}

RoundtripReport roundtrip(const EdgeData& data, const std::vector<double>& s_probe) {
  const HelicoidalInput in = HelicoidalInput::from_edge(data);
  const NaturalChart chart = natural_coordinates(in, 0.0, data.k());
  RoundtripReport r;
  const double m = data.m();
  const int k = data.k();
  for (double s : s_probe) {
    const double U = data.U_at(s);
    const double Urec = chart.U_of_s(s);
    r.sup_error_U = std::max(r.sup_error_U, std::abs(Urec / m - U));
    const FundamentalForm f = chart.fundamental_form(s);
    const double e = std::abs(f.E - std::pow(s, 2 * k)) + std::abs(f.F) +
                     std::abs(f.G / (m * m) - U * U);
    r.sup_error_metric = std::max(r.sup_error_metric, e);
    r.sup_error_s = std::max(r.sup_error_s, std::abs(chart.s_of_u(s) - s));
  }
  r.recovered_m = chart.U_of_s(0.0) / data.U0();
  r.probes = static_cast<int>(s_probe.size());
  return r;
}

}  // namespace bour
