#include "bour/deform.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>
#include <random>

#include "bour/error.hpp"
#include "bour/invariants.hpp"
#include "bour/numeric.hpp"
#include "bour/surface.hpp"

namespace bour {

namespace {

// Closed-form invariants as functions of (h, m) with U(0), V(0) fixed.
struct ShapeModel {
  double U0;
  double V0;

  double radicand(double h, double m) const {
    return m * m * U0 * U0 - h * h - std::pow(m, 4) * U0 * U0 * V0 * V0;
  }
  Eigen::Vector2d psi(double h, double m) const {
    const double mu2 = m * m * U0 * U0;
    return {std::sqrt(radicand(h, m)) / mu2, h / mu2};
  }
  Eigen::Matrix2d jacobian(double h, double m) const {
    const double r = std::sqrt(radicand(h, m));
    const double u2 = U0 * U0;
    const double r_m = (m * u2 - 2.0 * m * m * m * u2 * V0 * V0) / r;
    Eigen::Matrix2d J;
    J(0, 0) = -h / (r * m * m * u2);
    J(0, 1) = r_m / (m * m * u2) - 2.0 * r / (m * m * m * u2);
    J(1, 0) = 1.0 / (m * m * u2);
    J(1, 1) = -2.0 * h / (m * m * m * u2);
    return J;
  }
};

ShapeModel model_of(const EdgeData& d) { return {d.U0(), d.V0()}; }

}  // namespace

std::vector<std::pair<double, double>> metric_sample_points(const EdgeData& d, int n) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> s(d.J().lo, d.J().hi);
  std::uniform_real_distribution<double> t(0.0, 2.0 * std::numbers::pi);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) {
    p.first = s(rng);
    p.second = t(rng);
  }
  return pts;
}

double metric_deviation(const EdgeData& a, const EdgeData& b,
                        const std::vector<std::pair<double, double>>& points) {
  double worst = 0.0;
  for (const auto& [s, t] : points) {
    const FundamentalForm fa = first_fundamental_form(a, s, t);
    const FundamentalForm fb = first_fundamental_form(b, s, t);
    worst = std::max(worst, std::abs(fa.E - fb.E) + std::abs(fa.F - fb.F) +
                                std::abs(fa.G - fb.G));
  }
  return worst;
}

DeformationFamily deformation_family(const EdgeData& base, double h_span, double m_span, int nh,
                                     int nm, int n_samples) {
  if (nh < 1 || nm < 1) throw Error(Errc::invalid_argument, "grid needs at least one point");
  DeformationFamily fam{base, nh, nm, {}};
  auto axis = [](double c, double span, int n, int i) {
    return n == 1 ? c : c - span + 2.0 * span * i / (n - 1);
  };
  const auto pts = metric_sample_points(base, n_samples);
  fam.grid.resize(static_cast<std::size_t>(nh) * nm);
  parallel_for(fam.grid.size(), [&](std::size_t idx) {
    FamilyMember& mem = fam.grid[idx];
    mem.h = axis(base.h(), h_span, nh, static_cast<int>(idx) / nm);
    mem.m = axis(base.m(), m_span, nm, static_cast<int>(idx) % nm);
    if (!(mem.m > 0.0)) {
      mem.reason = "m <= 0";
      return;
    }
    const EdgeData d = base.with_shape(mem.h, mem.m);
    const ValidationReport rep = check_star(d, base.options().samples);
    if (!rep.star_ok) {
      mem.reason = rep.failures.front().condition;
      return;
    }
    try {
      mem.metric_deviation = metric_deviation(base, d, pts);
      mem.valid = true;
      mem.data = d;
    } catch (const Error& e) {
      mem.reason = e.what();
    }
  });
  return fam;
}

std::pair<double, double> invariant_map(const EdgeData& d) { return {kappa_nu(d), kappa_t(d)}; }

Eigen::Matrix2d invariant_jacobian(const EdgeData& d) {
  return model_of(d).jacobian(d.h(), d.m());
}

Eigen::Matrix2d invariant_jacobian_fd(const EdgeData& d, double step) {
  Eigen::Matrix2d J;
  auto eval = [&](double h, double m) {
    const auto [kn, kt] = invariant_map(d.with_shape(h, m));
    return Eigen::Vector2d(kn, kt);
  };
  J.col(0) = (eval(d.h() + step, d.m()) - eval(d.h() - step, d.m())) / (2.0 * step);
  J.col(1) = (eval(d.h(), d.m() + step) - eval(d.h(), d.m() - step)) / (2.0 * step);
  return J;
}

double jacobian_det(const EdgeData& d) {
  return 1.0 / (std::pow(d.m(), 3) * rho(d, 0.0) * d.U0() * d.U0());
}

InversionResult invert_invariants(const EdgeData& d0, double kn_target, double kt_target,
                                  const InversionOptions& opts) {
  if (!(kn_target > 0.0)) {
    throw Error(Errc::no_convergence, "kappa_nu must be positive on admissible data");
  }
  const ShapeModel model = model_of(d0);
  const Eigen::Vector2d target(kn_target, kt_target);
  const double h0 = d0.h();
  auto admissible = [&](double h, double m) {
    if (!(m > 0.0) || !(model.radicand(h, m) > 0.0)) return false;
    if (opts.preserve_h_sign && h0 != 0.0 && h * h0 < 0.0) return false;
    return true;
  };
  if (!admissible(d0.h(), d0.m())) {
    throw Error(Errc::star_violation, "starting datum violates rho(0) > 0");
  }

  InversionResult res;
  double h = d0.h();
  double m = d0.m();
  Eigen::Vector2d r = model.psi(h, m) - target;
  int it = 0;
  while (r.lpNorm<Eigen::Infinity>() >= opts.residual_tol) {
    if (it == opts.max_iterations) {
      throw Error(Errc::no_convergence,
                  "residual " + format_short(r.lpNorm<Eigen::Infinity>()) + " after " +
                      std::to_string(it) + " iterations");
    }
    const Eigen::Vector2d step = -model.jacobian(h, m).partialPivLu().solve(r);
    double lambda = 1.0;
    while (!admissible(h + lambda * step[0], m + lambda * step[1])) {
      lambda *= 0.5;
      if (lambda < 1e-12) throw Error(Errc::no_convergence, "step collapsed at the boundary");
    }
    const double hn = h + lambda * step[0];
    const double mn = m + lambda * step[1];
    if (hn == h && mn == m) {
      throw Error(Errc::no_convergence, "Newton step below resolution");
    }
    h = hn;
    m = mn;
    r = model.psi(h, m) - target;
    ++it;
  }
  res.h = h;
  res.m = m;
  res.iterations = it;
  res.residual = r.lpNorm<Eigen::Infinity>();
  EdgeData d = d0.with_shape(h, m);
  require_star(d);
  res.data = d;
  return res;
}

IsomerSet isomers(const EdgeData& d, int n_samples) {
  IsomerSet set;
  const auto pts = metric_sample_points(d, n_samples);
  const int signs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (const auto& sg : signs) {
    Isomer iso{sg[0], sg[1], d.with_signs(d.eps0(), sg[0], sg[1]), 0.0, 0.0};
    const Vec3 p0 = psi(iso.data, 0.0, 0.0).position;
    const Vec3 p1 = psi(iso.data, 0.0, d.m()).position;
    iso.helix_radius = std::hypot(p0.x(), p0.y());
    const double dtheta = std::atan2(p0.x() * p1.y() - p0.y() * p1.x(), p0.x() * p1.x() + p0.y() * p1.y());
    iso.helix_pitch = std::abs((p1.z() - p0.z()) / dtheta);
    set.max_metric_deviation =
        std::max(set.max_metric_deviation, metric_deviation(d, iso.data, pts));
    set.members.push_back(std::move(iso));
  }
  return set;
}

std::vector<EdgeData> revolution_path(const EdgeData& d, int steps) {
  if (steps < 2) throw Error(Errc::invalid_argument, "path needs at least 2 steps");
  std::vector<EdgeData> path;
  for (int i = 0; i < steps; ++i) {
    const double h = (i == steps - 1) ? 0.0 : d.h() * (1.0 - static_cast<double>(i) / (steps - 1));
    EdgeData member = d.with_shape(h, d.m());
    require_star(member);
    path.push_back(std::move(member));
  }
  return path;
}

}  // namespace bour
