#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bour/profile.hpp"

namespace bour {

struct FamilyMember {
  double h = 0.0;
  double m = 0.0;
  bool valid = false;
  std::optional<EdgeData> data;
  // max over sample points of |dE| + |dF| + |dG| against the base datum.
  double metric_deviation = 0.0;
  std::string reason;  // why an invalid member was rejected
};

struct DeformationFamily {
  EdgeData base;
  int nh = 0;
  int nm = 0;
  std::vector<FamilyMember> grid;  // h-major
};

// Deterministic (s, t) sample points on J x [0, 2 pi].
std::vector<std::pair<double, double>> metric_sample_points(const EdgeData& data, int n);
double metric_deviation(const EdgeData& a, const EdgeData& b,
                        const std::vector<std::pair<double, double>>& points);

DeformationFamily deformation_family(const EdgeData& base, double h_span, double m_span, int nh,
                                     int nm, int n_samples = 50);

// psi(h, m) = (kappa_nu, kappa_t).
std::pair<double, double> invariant_map(const EdgeData& data);
// d psi / d(h, m), rows (kappa_nu, kappa_t), columns (h, m).
Eigen::Matrix2d invariant_jacobian(const EdgeData& data);
// Central differences of the closed-form invariants with the given step.
Eigen::Matrix2d invariant_jacobian_fd(const EdgeData& data, double step = 1e-5);
double jacobian_det(const EdgeData& data);

struct InversionOptions {
  int max_iterations = 50;
  double residual_tol = 1e-12;
  // Reject iterates whose pitch changes sign relative to the start.
  bool preserve_h_sign = true;
};

struct InversionResult {
  double h = 0.0;
  double m = 0.0;
  int iterations = 0;
  double residual = 0.0;
  std::optional<EdgeData> data;
};

// Damped Newton from data0's (h, m). Throws Errc::no_convergence or
// Errc::star_violation.
InversionResult invert_invariants(const EdgeData& data0, double kappa_nu_target,
                                  double kappa_t_target, const InversionOptions& opts = {});

struct Isomer {
  int eps1 = 1;
  int eps2 = 1;
  EdgeData data;
  double helix_radius = 0.0;  // measured on Psi(0, t)
  double helix_pitch = 0.0;   // |dz/dtheta| measured on Psi(0, t)
};

struct IsomerSet {
  std::vector<Isomer> members;  // (+,+), (+,-), (-,+), (-,-)
  double max_metric_deviation = 0.0;
};

IsomerSet isomers(const EdgeData& data, int n_samples = 50);

// Linear pitch schedule from h0 to 0 with `steps` members, each validated.
std::vector<EdgeData> revolution_path(const EdgeData& data, int steps);

}  // namespace bour
