#pragma once

#include <string>
#include <vector>

#include "bour/expr.hpp"
#include "bour/jet.hpp"

namespace bour {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

// User-facing Bour datum {U, h, m, eps0, eps1, eps2, k, J}.
struct EdgeParams {
  SmoothFn U;
  double h = 0.0;
  double m = 1.0;
  int eps0 = 1;
  int eps1 = 1;
  int eps2 = 1;
  int k = 1;
  Interval J{-0.5, 0.5};
};

struct ProfileOptions {
  // U^(i)(0) counts as zero when |U^(i)(0)| <= zero_tol * max(1, |U(0)|).
  double zero_tol = 1e-9;
  // Inside |s| < s_switch, V is evaluated from its jet at 0.
  double s_switch = 1e-3;
  int samples = 1024;
};

// A validated-structure datum; U'(s) = s^k V(s) with V's jet at 0 cached.
class EdgeData {
 public:
  const EdgeParams& params() const { return p_; }
  const ProfileOptions& options() const { return opts_; }
  const SmoothFn& U() const { return p_.U; }
  double h() const { return p_.h; }
  double m() const { return p_.m; }
  int eps0() const { return p_.eps0; }
  int eps1() const { return p_.eps1; }
  int eps2() const { return p_.eps2; }
  int k() const { return p_.k; }
  int n() const { return p_.k + 1; }
  const Interval& J() const { return p_.J; }

  double U_at(double s) const;
  double dU_at(double s) const;
  double V_at(double s) const;
  double U0() const { return U_jet0_[0]; }
  double V0() const { return V_jet0_[0]; }
  // U^(i)(0) for 0 <= i <= kMaxJetOrder.
  double U_derivative0(int i) const { return U_jet0_.derivative(i); }
  double zero_threshold() const;

  const Jet& U_jet0() const { return U_jet0_; }
  const Jet& V_jet0() const { return V_jet0_; }
  Jet U_jet(double s, int order) const;
  Jet V_jet(double s, int order) const;

  // Same U, k, J with other parameters; (*) is not re-checked.
  EdgeData with_shape(double h, double m) const;
  EdgeData with_signs(int eps0, int eps1, int eps2) const;

 private:
  friend EdgeData make_edge_data_unchecked(const EdgeParams&, const ProfileOptions&);

  EdgeParams p_;
  ProfileOptions opts_;
  Jet U_jet0_;
  Jet V_jet0_;
};

struct StarFailure {
  std::string condition;
  double s = 0.0;
  double value = 0.0;
};

struct ValidationReport {
  bool star_ok = true;
  double rho_min = 0.0;  // minimum of rho^2 over the sampled points
  std::vector<StarFailure> failures;
};

// Checks structure (signs, m > 0, 0 in J, U > 0, vanishing low derivatives)
// but not the radicand condition.
EdgeData make_edge_data_unchecked(const EdgeParams& p, const ProfileOptions& opts = {});
// Full validation; throws Errc::star_violation when the radicand check fails.
EdgeData make_edge_data(const EdgeParams& p, const ProfileOptions& opts = {});
EdgeData make_edge_data(const SmoothFn& U, double h, double m, int eps0, int eps1, int eps2, int k,
                        Interval J);
// Throws Errc::star_violation unless check_star passes.
void require_star(const EdgeData& data);

// m^2 U^2 - h^2 - m^4 U^2 V^2.
double rho_squared(const EdgeData& data, double s);
// Throws Errc::negative_radicand when rho_squared(s) < 0.
double rho(const EdgeData& data, double s);
ValidationReport check_star(const EdgeData& data, int samples = 1024);

}  // namespace bour
