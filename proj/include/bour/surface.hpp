#pragma once

#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "bour/jet.hpp"
#include "bour/profile.hpp"

namespace bour {

using Vec3 = Eigen::Vector3d;

struct SurfacePoint {
  Vec3 position = Vec3::Zero();
  double s = 0.0;
  double t = 0.0;
  bool singular = false;
};

struct FundamentalForm {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
};

struct Mesh {
  int rows = 0;
  int cols = 0;
  std::vector<SurfacePoint> points;  // row-major, s varies by row
  std::optional<int> singular_row;

  const SurfacePoint& at(int r, int c) const { return points[static_cast<std::size_t>(r) * cols + c]; }
};

// Position with its analytic first partials.
struct SurfaceFrame {
  Vec3 position = Vec3::Zero();
  Vec3 psi_s = Vec3::Zero();
  Vec3 psi_t = Vec3::Zero();
};

// Jets in s of x(s), z(s) and the s-part beta(s) = theta(s, t) - eps1 t / m.
struct ProfileJets {
  Jet x;
  Jet z;
  Jet beta;
};

inline constexpr double kSingularThreshold = 1e-14;
// Inside |s| < kJetRadius pointwise evaluation uses the expansion at 0.
inline constexpr double kJetRadius = 1e-4;

double x_of_s(const EdgeData& data, double s);
double z_of_s(const EdgeData& data, double s, double tol = 1e-12);
double theta(const EdgeData& data, double s, double t, double tol = 1e-12);
SurfacePoint psi(const EdgeData& data, double s, double t, double tol = 1e-12);

// Expansions about base s; z and beta are integrated term by term from their
// derivative jets, anchored at the pointwise values.
ProfileJets profile_jets(const EdgeData& data, double s, int order, double tol = 1e-12);
// Jets of x'(s) and z'(s); no quadrature involved.
std::array<Jet, 2> profile_velocity_jets(const EdgeData& data, double s, int order);
std::array<Jet, 3> psi_jet_at_zero(const EdgeData& data, double t, int order);

SurfaceFrame psi_frame(const EdgeData& data, double s, double t, double tol = 1e-12);
FundamentalForm first_fundamental_form(const EdgeData& data, double s, double t,
                                       double tol = 1e-12);

Interval default_t_range(const EdgeData& data);
Mesh sample_mesh(const EdgeData& data, Interval s_range, Interval t_range, int rows, int cols,
                 double tol = 1e-12);

}  // namespace bour
