#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bour/cusps.hpp"
#include "bour/numeric.hpp"
#include "bour/profile.hpp"
#include "bour/surface.hpp"

namespace bour {

// Profile curve gamma(u) = (x(u), z(u)) of the helicoidal surface
// (x cos v, x sin v, z + h v).
struct HelicoidalInput {
  std::function<double(double)> x;
  // Jets of (x', z') at u.
  VelocityJets velocity;
  double h = 0.0;
  Interval interval;

  static HelicoidalInput from_expressions(const SmoothFn& x, const SmoothFn& z, double h,
                                          Interval interval);
  // The profile (x(s), z(s)) of a Bour datum, parametrized by s on J.
  static HelicoidalInput from_edge(const EdgeData& data);

  Jet x_jet(double u, int order) const;
};

struct GenericityReport {
  bool generic = false;
  std::vector<std::string> diagnostics;
};

// Natural coordinates (s, w) at a singular point u0: w = v + phi(u) removes
// the cross term, s is the canonical parameter of the sheared profile.
class NaturalChart {
 public:
  double u0() const { return u0_; }
  int k() const { return k_; }
  double h() const { return h_; }
  Interval s_range() const { return canonical_.s_range(); }
  const CanonicalParameter& canonical() const { return canonical_; }

  double s_of_u(double u) const { return canonical_.s_of_u(u); }
  double u_of_s(double s) const { return canonical_.u_of_s(s); }
  double phi_of_u(double u) const;
  double U_of_s(double s) const;
  const Jet& U_jet0() const { return U_jet0_; }

  // Metric of the chart at (s, w); independent of w.
  FundamentalForm fundamental_form(double s) const;
  // Sheared partials f~_u, f~_w at (u, w).
  std::array<Vec3, 2> sheared_partials(double u, double w) const;

  std::vector<double> tab_u() const { return canonical_.u_nodes(); }
  std::vector<double> tab_s() const { return canonical_.s_nodes(); }
  const std::vector<double>& tab_phi() const { return phi_; }
  const std::vector<double>& tab_U() const { return U_; }

 private:
  friend NaturalChart natural_coordinates(const HelicoidalInput&, double, int, int);

  HelicoidalInput input_;
  double u0_ = 0.0;
  int k_ = 0;
  double h_ = 0.0;
  CanonicalParameter canonical_;
  std::vector<double> phi_;
  std::vector<double> U_;
  HermiteTable phi_table_;
  HermiteTable U_table_;
  Jet U_jet0_;
};

struct RoundtripReport {
  double sup_error_U = 0.0;       // sup |U_rec / m - U|
  double sup_error_metric = 0.0;  // sup |E - s^2k| + |F| + |G / m^2 - U^2|
  double sup_error_s = 0.0;       // sup |s(u) - u|; the Bour s is already canonical
  double recovered_m = 0.0;       // U_rec(0) / U(0)
  int probes = 0;
};

std::vector<double> singular_set(const HelicoidalInput& input, int n_samples = 1024);
GenericityReport check_generic(const HelicoidalInput& input, double u0, int k,
                               double tol = kCuspTol);
NaturalChart natural_coordinates(const HelicoidalInput& input, double u0, int k,
                                 int n_tab = 512);
RoundtripReport roundtrip(const EdgeData& data, const std::vector<double>& s_probe);
// Probes on [lo, hi] with n points.
std::vector<double> uniform_probes(double lo, double hi, int n);

}  // namespace bour
