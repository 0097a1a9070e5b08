#include "bour/cusps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bour/error.hpp"
#include "bour/surface.hpp"

namespace bour {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kBandOrder = 16;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double det2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// A derivative vector, or a combination of them, with the weight bounding it
// in units of the coefficient scale and the highest order it involves.
struct Bounded {
  Vec2 v;
  double weight = 0.0;
  int order = 0;
};

Bounded combine(double a, const Bounded& p, double b, const Bounded& q) {
  return {a * p.v + b * q.v, std::abs(a) * p.weight + std::abs(b) * q.weight,
          std::max(p.order, q.order)};
}

}  // namespace

const char* cusp_tag_name(CuspTag tag) {
  switch (tag) {
    case CuspTag::cusp32: return "3/2";
    case CuspTag::cusp52: return "5/2";
    case CuspTag::cusp72: return "7/2";
    case CuspTag::cusp43: return "4/3";
    case CuspTag::cusp53: return "5/3";
    case CuspTag::regular: return "regular";
    case CuspTag::undetermined: return "undetermined";
  }
  return "undetermined";
}

PlaneCurveJet::PlaneCurveJet(Jet x, Jet y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.base() != y_.base() || x_.order() != y_.order()) {
    throw Error(Errc::invalid_argument, "curve components differ in base or order");
  }
}

PlaneCurveJet PlaneCurveJet::from_functions(const SmoothFn& x, const SmoothFn& y, double base,
                                            int order) {
  return PlaneCurveJet(x.jet(base, order), y.jet(base, order));
}

Vec2 PlaneCurveJet::derivative(int j) const { return {x_.derivative(j), y_.derivative(j)}; }

double PlaneCurveJet::scale() const {
  double s = 0.0;
  for (int j = 1; j <= order(); ++j) s = std::max(s, std::hypot(x_[j], y_[j]));
  return s;
}

CuspType classify_plane_cusp(const PlaneCurveJet& c, double tol) {
  if (c.order() < 7) throw Error(Errc::invalid_argument, "cusp classification needs order >= 7");
  // A single derivative vanishes relative to the whole jet.  A determinant is
  // judged against the coefficients it actually uses, up to its highest order,
  // so large high-order terms cannot swamp a decisive low-order test.
  const double S = c.scale();
  std::vector<double> prefix(c.order() + 1, 0.0);
  std::vector<Bounded> g(c.order() + 1);
  for (int j = 1; j <= c.order(); ++j) {
    prefix[j] = std::max(prefix[j - 1], std::hypot(c.x()[j], c.y()[j]));
    g[j] = {c.derivative(j), factorial(j), j};
  }
  auto is_zero = [&](int j) { return g[j].v.norm() <= tol * factorial(j) * S; };
  auto det_is_zero = [&](double det, const Bounded& a, const Bounded& b) {
    const double p = prefix[std::max(a.order, b.order)];
    return std::abs(det) <= tol * a.weight * b.weight * p * p;
  };

  CuspType out;
  auto& w = out.witnesses;
  w["|gamma'|"] = g[1].v.norm();
  if (S == 0.0) return out;
  if (!is_zero(1)) {
    out.tag = CuspTag::regular;
    return out;
  }

  if (!is_zero(2)) {
    const double d23 = det2(g[2].v, g[3].v);
    w["det(g2,g3)"] = d23;
    if (!det_is_zero(d23, g[2], g[3])) {
      out.tag = CuspTag::cusp32;
      return out;
    }
    const double n2 = g[2].v.squaredNorm();
    const double c1 = g[3].v.dot(g[2].v) / n2;
    w["c1"] = c1;
    const Bounded t5 = combine(3.0, g[5], -10.0 * c1, g[4]);
    const double d5 = det2(g[2].v, t5.v);
    w["det(g2,3g5-10c1g4)"] = d5;
    if (!det_is_zero(d5, g[2], t5)) {
      out.tag = CuspTag::cusp52;
      return out;
    }
    const Bounded r5 = combine(1.0, g[5], -10.0 / 3.0 * c1, g[4]);
    const double c2 = r5.v.dot(g[2].v) / n2;
    w["c2"] = c2;
    const double a4 = 7.0 * c2 - 70.0 / 3.0 * c1 * c1 * c1;
    const Bounded t7 = combine(1.0, combine(1.0, g[7], -7.0 * c1, g[6]), -a4, g[4]);
    const double d7 = det2(g[2].v, t7.v);
    w["det(g2,g7-7c1g6-(7c2-70/3c1^3)g4)"] = d7;
    if (!det_is_zero(d7, g[2], t7)) out.tag = CuspTag::cusp72;
    return out;
  }

  const double d34 = det2(g[3].v, g[4].v);
  w["det(g3,g4)"] = d34;
  if (!det_is_zero(d34, g[3], g[4])) {
    out.tag = CuspTag::cusp43;
    return out;
  }
  if (is_zero(3)) return out;
  const double d35 = det2(g[3].v, g[5].v);
  w["det(g3,g5)"] = d35;
  if (!det_is_zero(d35, g[3], g[5])) out.tag = CuspTag::cusp53;
  return out;
}

PlaneCurveJet reparametrize(const PlaneCurveJet& c, const Jet& phi) {
  return PlaneCurveJet(compose(c.x(), phi), compose(c.y(), phi));
}

PlaneCurveJet apply_plane_map(const PlaneCurveJet& c, const PlaneMap& map) {
  const auto r = map(c.x(), c.y());
  return PlaneCurveJet(r[0], r[1]);
}

ReparamCheck reparam_invariance_check(const PlaneCurveJet& c, const SmoothFn& phi, double tol) {
  const Jet pj = phi.jet(c.base(), c.order());
  if (std::abs(pj[1]) < tol) throw Error(Errc::not_diffeo, "phi'(base) vanishes");
  if (std::abs(pj[0] - c.base()) > 1e-12 * std::max(1.0, std::abs(c.base()))) {
    throw Error(Errc::invalid_argument, "phi must fix the base point");
  }
  ReparamCheck r;
  r.original = classify_plane_cusp(c, tol);
  r.reparametrized = classify_plane_cusp(reparametrize(c, pj), tol);
  const double d1 = pj.derivative(1);
  const double d2 = pj.derivative(2);
  if (c.derivative(2).norm() > tol * 2.0 * c.scale()) {
    const Vec2 g2 = c.derivative(2);
    const double c1 = c.derivative(3).dot(g2) / g2.squaredNorm();
    r.predicted_c1 = c1 * d1 + 3.0 * d2 / d1;
    const PlaneCurveJet rc = reparametrize(c, pj);
    const Vec2 h2 = rc.derivative(2);
    r.recomputed_c1 = rc.derivative(3).dot(h2) / h2.squaredNorm();
  } else {
    r.predicted_c1 = kNaN;
    r.recomputed_c1 = kNaN;
  }
  return r;
}

// ------------------------------------------------------- canonical parameter

double CanonicalParameter::speed(double u) const {
  const auto v = vel_(u, 0);
  double s = 0.0;
  for (const Jet& j : v) s += j[0] * j[0];
  return std::sqrt(s);
}

double CanonicalParameter::s_of_u(double u) const {
  if (std::abs(u - u0_) < band_) return s_jet_.evaluate(u);
  return s_table_(u);
}

double CanonicalParameter::ds_du(double u) const {
  if (std::abs(u - u0_) < band_) return s_jet_.differentiated().evaluate(u);
  return s_table_.prime(u);
}

double CanonicalParameter::u_of_s(double s) const { return u_table_(s); }

double CanonicalParameter::du_ds(double s) const { return u_table_.prime(s); }

double CanonicalParameter::s_exact(double u) const {
  if (!domain_.contains(u)) throw Error(Errc::invalid_argument, "u outside the domain");
  if (std::abs(u - u0_) < band_) return s_jet_.evaluate(u);
  const double edge = u > u0_ ? u0_ + band_ : u0_ - band_;
  const double s_edge = s_jet_.evaluate(edge);
  QuadratureOptions q;
  const double A = std::pow(std::abs(s_edge), k_ + 1) / (k_ + 1) +
                   std::abs(integrate([&](double x) { return speed(x); }, edge, u, q));
  return (u > u0_ ? 1.0 : -1.0) * std::pow((k_ + 1) * A, 1.0 / (k_ + 1));
}

CanonicalParameter canonical_parameter(const VelocityJets& velocity, double u0, int k,
                                       Interval domain, int n_samples, double tol) {
  if (k < 0) throw Error(Errc::invalid_argument, "k must be non-negative");
  if (n_samples < 8) throw Error(Errc::invalid_argument, "at least 8 samples required");
  if (!domain.contains(u0) || !(domain.lo < domain.hi)) {
    throw Error(Errc::invalid_argument, "domain must contain u0");
  }
  const int order = std::max(kBandOrder, k + 8);
  const std::vector<Jet> v0 = velocity(u0, order);

  // Multiplicity: coefficients 0..k-1 of gamma' vanish, coefficient k does not.
  double scale = 0.0;
  for (int j = 0; j <= k + 2; ++j) {
    double nj = 0.0;
    for (const Jet& c : v0) nj += c[j] * c[j];
    scale = std::max(scale, std::sqrt(nj));
  }
  for (int j = 0; j <= k; ++j) {
    double nj = 0.0;
    for (const Jet& c : v0) nj += c[j] * c[j];
    nj = std::sqrt(nj);
    const bool zero = nj <= tol * scale;
    if ((j < k && !zero) || (j == k && zero)) {
      throw Error(Errc::wrong_multiplicity,
                  "gamma^(" + std::to_string(j + 1) + ")(u0) " + (zero ? "vanishes" : "is nonzero"));
    }
  }

  CanonicalParameter cp;
  cp.vel_ = velocity;
  cp.u0_ = u0;
  cp.k_ = k;
  cp.domain_ = domain;

  // s = (u-u0) H^{1/(k+1)}, H = (k+1) (u-u0)^{-(k+1)} int_{u0}^u (z-u0)^k G, G = |gamma'|/|u-u0|^k.
  Jet G2(u0, order - k);
  for (const Jet& c : v0) {
    const Jet q = jet_divide_by_power(c, k, std::numeric_limits<double>::infinity());
    G2 += q * q;
  }
  const Jet G = sqrt(G2);
  Jet H(u0, G.order());
  for (int j = 0; j <= G.order(); ++j) H[j] = (k + 1) * G[j] / (j + k + 1);
  cp.s_jet_ = pow(H, 1.0 / (k + 1)).times_power(1);

  // Nodes: uniform grid with u0 inserted.
  std::vector<double> u(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    u[i] = (i == n_samples - 1) ? domain.hi : domain.lo + domain.width() * i / (n_samples - 1);
  }
  const double min_gap = 1e-9 * domain.width();
  u.erase(std::remove_if(u.begin(), u.end(), [&](double x) { return std::abs(x - u0) < min_gap; }),
          u.end());
  u.insert(std::upper_bound(u.begin(), u.end(), u0), u0);
  const auto i0 = static_cast<std::size_t>(std::find(u.begin(), u.end(), u0) - u.begin());

  std::vector<double> A(u.size(), 0.0);
  QuadratureOptions q;
  auto sp = [&](double x) { return cp.speed(x); };
  for (std::size_t i = i0 + 1; i < u.size(); ++i) A[i] = A[i - 1] + integrate(sp, u[i - 1], u[i], q);
  for (std::size_t i = i0; i-- > 0;) A[i] = A[i + 1] + integrate(sp, u[i], u[i + 1], q);

  std::vector<double> s(u.size());
  std::vector<double> dsdu(u.size());
  const Jet ds_jet = cp.s_jet_.differentiated();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double sign = u[i] > u0 ? 1.0 : (u[i] < u0 ? -1.0 : 0.0);
    s[i] = sign * std::pow((k + 1) * A[i], 1.0 / (k + 1));
    if (std::abs(u[i] - u0) < cp.band_) {
      dsdu[i] = ds_jet.evaluate(u[i]);
    } else {
      dsdu[i] = cp.speed(u[i]) / std::pow(std::abs(s[i]), k);
    }
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) {
      throw Error(Errc::wrong_multiplicity, "canonical parameter is not monotone on the domain");
    }
  }
  std::vector<double> duds(dsdu.size());
  std::transform(dsdu.begin(), dsdu.end(), duds.begin(), [](double d) { return 1.0 / d; });
  cp.u_ = u;
  cp.s_ = s;
  cp.dsdu_ = dsdu;
  cp.s_table_ = HermiteTable(u, s, dsdu);
  cp.u_table_ = HermiteTable(s, u, duds);
  return cp;
}

CanonicalParameter canonical_parameter(const SmoothFn& x, const SmoothFn& y, double u0, int k,
                                       Interval domain, int n_samples) {
  VelocityJets vel = [x, y](double u, int order) {
    return std::vector<Jet>{x.jet(u, order + 1).differentiated(),
                            y.jet(u, order + 1).differentiated()};
  };
  return canonical_parameter(vel, u0, k, domain, n_samples);
}

// ------------------------------------------------------------ edge types

CuspType classify_edge(const EdgeData& d, double tol) {
  if (d.k() != 1 && d.k() != 2) {
    throw Error(Errc::unsupported_k, "edge classification covers k = 1 and k = 2 only");
  }
  const double band = tol * std::max(1.0, std::abs(d.U0()));
  CuspType out;
  auto decisive = [&](int j) {
    const double v = d.U_derivative0(j);
    out.witnesses["U^(" + std::to_string(j) + ")(0)"] = v;
    return std::abs(v) / factorial(j) > band;
  };
  if (d.k() == 1) {
    if (decisive(3)) {
      out.tag = CuspTag::cusp32;
    } else if (decisive(5)) {
      out.tag = CuspTag::cusp52;
    } else if (decisive(7)) {
      out.tag = CuspTag::cusp72;
    }
  } else {
    if (decisive(4)) {
      out.tag = CuspTag::cusp43;
    } else if (decisive(5)) {
      out.tag = CuspTag::cusp53;
    }
  }
  return out;
}

CuspType classify_edge_via_profile(const EdgeData& d, double tol) {
  const ProfileJets pj = profile_jets(d, 0.0, 9);
  return classify_plane_cusp(PlaneCurveJet(pj.x, pj.z), tol);
}

}  // namespace bour
