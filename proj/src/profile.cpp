#include "bour/profile.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "bour/error.hpp"

namespace bour {

namespace {

bool is_sign(int e) { return e == 1 || e == -1; }

std::vector<double> sample_grid(const Interval& J, int samples) {
  std::vector<double> s(samples);
  for (int i = 0; i < samples; ++i) {
    s[i] = (i == samples - 1) ? J.hi : J.lo + J.width() * i / (samples - 1);
  }
  if (J.contains(0.0) && std::find(s.begin(), s.end(), 0.0) == s.end()) {
    s.insert(std::upper_bound(s.begin(), s.end(), 0.0), 0.0);
  }
  return s;
}

// Shrinks [a, b] around the sign change of f to width <= 1e-10.
double bisect_sign_change(const EdgeData& d, double a, double b) {
  double fa = rho_squared(d, a);
  while (b - a > 1e-10) {
    const double mid = 0.5 * (a + b);
    const double fm = rho_squared(d, mid);
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double EdgeData::zero_threshold() const {
  return opts_.zero_tol * std::max(1.0, std::abs(U0()));
}

double EdgeData::U_at(double s) const { return p_.U(s); }

double EdgeData::dU_at(double s) const { return p_.U.jet(s, 1)[1]; }

double EdgeData::V_at(double s) const {
  if (std::abs(s) < opts_.s_switch) return V_jet0_.evaluate(s);
  return dU_at(s) / std::pow(s, p_.k);
}

Jet EdgeData::U_jet(double s, int order) const { return p_.U.jet(s, order); }

Jet EdgeData::V_jet(double s, int order) const {
  if (std::abs(s) < opts_.s_switch) {
    if (order > V_jet0_.order()) {
      throw Error(Errc::invalid_argument, "V jet order exceeds the cached expansion");
    }
    return V_jet0_.rebased(s).truncated(order);
  }
  const Jet du = p_.U.jet(s, order + 1).differentiated();
  return du / pow(Jet::variable(s, order), p_.k);
}

EdgeData EdgeData::with_shape(double h, double m) const {
  if (!(m > 0.0)) throw Error(Errc::invalid_argument, "m must be positive");
  EdgeData d = *this;
  d.p_.h = h;
  d.p_.m = m;
  return d;
}

EdgeData EdgeData::with_signs(int eps0, int eps1, int eps2) const {
  if (!is_sign(eps0) || !is_sign(eps1) || !is_sign(eps2)) {
    throw Error(Errc::invalid_argument, "signs must be +1 or -1");
  }
  EdgeData d = *this;
  d.p_.eps0 = eps0;
  d.p_.eps1 = eps1;
  d.p_.eps2 = eps2;
  return d;
}

EdgeData make_edge_data_unchecked(const EdgeParams& p, const ProfileOptions& opts) {
  if (!(p.m > 0.0)) throw Error(Errc::invalid_argument, "m must be positive");
  if (!is_sign(p.eps0) || !is_sign(p.eps1) || !is_sign(p.eps2)) {
    throw Error(Errc::invalid_argument, "signs must be +1 or -1");
  }
  if (p.k < 1 || p.k > kMaxJetOrder - 11) {
    throw Error(Errc::invalid_argument, "k must lie in [1, " + std::to_string(kMaxJetOrder - 11) + "]");
  }
  if (!(p.J.lo < p.J.hi) || !p.J.contains(0.0)) {
    throw Error(Errc::invalid_argument, "J must be a proper interval containing 0");
  }
  if (!std::isfinite(p.h)) throw Error(Errc::invalid_argument, "h must be finite");
  if (opts.samples < 16) throw Error(Errc::invalid_argument, "at least 16 samples required");

  EdgeData d;
  d.p_ = p;
  d.opts_ = opts;
  d.U_jet0_ = p.U.jet(0.0, kMaxJetOrder);

  for (double s : sample_grid(p.J, opts.samples)) {
    const double u = p.U(s);
    if (!(u > 0.0)) {
      throw Error(Errc::non_positive_u, "U(" + format_short(s) + ") = " + format_short(u));
    }
  }
  const double thr = d.zero_threshold();
  for (int i = 1; i <= p.k; ++i) {
    const double di = d.U_jet0_.derivative(i);
    if (std::abs(di) > thr) {
      throw Error(Errc::non_vanishing_low_derivative,
                  "U^(" + std::to_string(i) + ")(0) = " + format_short(di));
    }
  }
  d.V_jet0_ = jet_divide_by_power(d.U_jet0_.differentiated(), p.k, thr);
  return d;
}

void require_star(const EdgeData& data) {
  const ValidationReport r = check_star(data, data.options().samples);
  if (!r.star_ok) {
    const StarFailure& f = r.failures.front();
    char buf[128];
    std::snprintf(buf, sizeof buf, " at s = %.6g (value %.6g)", f.s, f.value);
    throw Error(Errc::star_violation, f.condition + buf);
  }
}

EdgeData make_edge_data(const EdgeParams& p, const ProfileOptions& opts) {
  EdgeData d = make_edge_data_unchecked(p, opts);
  require_star(d);
  return d;
}

EdgeData make_edge_data(const SmoothFn& U, double h, double m, int eps0, int eps1, int eps2, int k,
                        Interval J) {
  return make_edge_data(EdgeParams{U, h, m, eps0, eps1, eps2, k, J});
}

double rho_squared(const EdgeData& d, double s) {
  const double mu = d.m() * d.U_at(s);
  const double v = d.m() * mu * d.V_at(s);
  return mu * mu - d.h() * d.h() - v * v;
}

double rho(const EdgeData& d, double s) {
  const double r = rho_squared(d, s);
  if (r < 0.0) {
    throw Error(Errc::negative_radicand,
                "rho^2(" + format_short(s) + ") = " + format_short(r));
  }
  return std::sqrt(r);
}

ValidationReport check_star(const EdgeData& d, int samples) {
  if (samples < 16) throw Error(Errc::invalid_argument, "at least 16 samples required");
  const std::vector<double> s = sample_grid(d.J(), samples);
  std::vector<double> r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = rho_squared(d, s[i]);

  ValidationReport rep;
  rep.rho_min = *std::min_element(r.begin(), r.end());

  const double r0 = rho_squared(d, 0.0);
  if (!(r0 > 0.0)) rep.failures.push_back({"rho(0) != 0", 0.0, r0});

  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0 && (r[i] > 0.0) != (r[i - 1] > 0.0)) {
      const double at = bisect_sign_change(d, s[i - 1], s[i]);
      rep.failures.push_back({"rho^2 > 0 (sign change)", at, rho_squared(d, at)});
    }
    // One entry per run of non-positive samples, at its minimum.
    if (!(r[i] > 0.0) && s[i] != 0.0) {
      std::size_t j = i;
      std::size_t best = i;
      while (j < s.size() && !(r[j] > 0.0)) {
        if (r[j] < r[best]) best = j;
        ++j;
      }
      rep.failures.push_back({"rho^2 > 0", s[best], r[best]});
      i = j - 1;
      if (j < s.size()) {
        const double at = bisect_sign_change(d, s[j - 1], s[j]);
        rep.failures.push_back({"rho^2 > 0 (sign change)", at, rho_squared(d, at)});
        i = j;
      }
    }
  }

  // Dips between grid points.
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (r[i] > 0.0 && r[i] < r[i - 1] && r[i] <= r[i + 1]) {
      std::uintmax_t iters = 60;
      const auto [at, val] = boost::math::tools::brent_find_minima(
          [&](double x) { return rho_squared(d, x); }, s[i - 1], s[i + 1], 40, iters);
      rep.rho_min = std::min(rep.rho_min, val);
      if (!(val > 0.0)) rep.failures.push_back({"rho^2 > 0 (refined minimum)", at, val});
    }
  }
  rep.star_ok = rep.failures.empty();
  return rep;
}

}  // namespace bour
