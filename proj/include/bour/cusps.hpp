#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bour/expr.hpp"
#include "bour/jet.hpp"
#include "bour/numeric.hpp"
#include "bour/profile.hpp"

namespace bour {

using Vec2 = Eigen::Vector2d;

enum class CuspTag { cusp32, cusp52, cusp72, cusp43, cusp53, regular, undetermined };

// "3/2", ..., "regular", "undetermined".
const char* cusp_tag_name(CuspTag tag);

struct CuspType {
  CuspTag tag = CuspTag::undetermined;
  // Decisive determinants, norms and, where they exist, the constants c1, c2.
  std::map<std::string, double> witnesses;

  bool has(const std::string& key) const { return witnesses.count(key) != 0; }
};

// Two component jets of a plane curve at a common base.
class PlaneCurveJet {
 public:
  PlaneCurveJet(Jet x, Jet y);
  static PlaneCurveJet from_functions(const SmoothFn& x, const SmoothFn& y, double base,
                                      int order = 9);

  const Jet& x() const { return x_; }
  const Jet& y() const { return y_; }
  double base() const { return x_.base(); }
  int order() const { return x_.order(); }
  Vec2 derivative(int j) const;
  // Largest coefficient norm; derivative j is bounded by j! times this.
  double scale() const;

 private:
  Jet x_;
  Jet y_;
};

inline constexpr double kCuspTol = 1e-8;

CuspType classify_plane_cusp(const PlaneCurveJet& c, double tol = kCuspTol);

// The curve c o phi, expanded at the point mapped onto c.base().
PlaneCurveJet reparametrize(const PlaneCurveJet& c, const Jet& phi);
// Phi o c for a map of the plane given on jets.
using PlaneMap = std::function<std::array<Jet, 2>(const Jet& x, const Jet& y)>;
PlaneCurveJet apply_plane_map(const PlaneCurveJet& c, const PlaneMap& map);

struct ReparamCheck {
  CuspType original;
  CuspType reparametrized;
  // c1 of the reparametrized curve: predicted c1 phi' + 3 phi'' / phi', and
  // recomputed from its jet. NaN when gamma'' vanishes.
  double predicted_c1 = 0.0;
  double recomputed_c1 = 0.0;
};

// phi must satisfy phi(base) = base with phi'(base) != 0.
ReparamCheck reparam_invariance_check(const PlaneCurveJet& c, const SmoothFn& phi,
                                      double tol = kCuspTol);

// Jets of the velocity components at u, of the requested order.
using VelocityJets = std::function<std::vector<Jet>(double u, int order)>;

// Monotone map s(u) with ||d gamma / ds|| = |s|^k.
class CanonicalParameter {
 public:
  double u0() const { return u0_; }
  int k() const { return k_; }
  Interval domain() const { return domain_; }
  Interval s_range() const { return {s_.front(), s_.back()}; }

  double s_of_u(double u) const;
  double ds_du(double u) const;
  double u_of_s(double s) const;
  double du_ds(double s) const;
  // Evaluates s(u) by quadrature, independent of the table.
  double s_exact(double u) const;
  // Expansion of s(u) at u0.
  const Jet& s_jet() const { return s_jet_; }

  const std::vector<double>& u_nodes() const { return u_; }
  const std::vector<double>& s_nodes() const { return s_; }
  const std::vector<double>& dsdu_nodes() const { return dsdu_; }

 private:
  friend CanonicalParameter canonical_parameter(const VelocityJets&, double, int, Interval, int,
                                                double);
  double speed(double u) const;

  VelocityJets vel_;
  double u0_ = 0.0;
  int k_ = 0;
  Interval domain_;
  double band_ = 1e-3;
  Jet s_jet_;
  std::vector<double> u_, s_, dsdu_;
  HermiteTable s_table_;
  HermiteTable u_table_;
};

// Throws Errc::wrong_multiplicity unless gamma^(i)(u0) = 0 for i <= k and
// gamma^(k+1)(u0) != 0.
CanonicalParameter canonical_parameter(const VelocityJets& velocity, double u0, int k,
                                       Interval domain, int n_samples = 512,
                                       double tol = kCuspTol);
CanonicalParameter canonical_parameter(const SmoothFn& x, const SmoothFn& y, double u0, int k,
                                       Interval domain, int n_samples = 512);

// Edge type from the U derivatives at 0 (k = 1 or 2).
CuspType classify_edge(const EdgeData& data, double tol = kCuspTol);
// Edge type from the cusp of the profile curve (x(s), z(s)) at 0.
CuspType classify_edge_via_profile(const EdgeData& data, double tol = kCuspTol);

}  // namespace bour
