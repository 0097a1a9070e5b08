#pragma once

#include <optional>
#include <vector>

#include "bour/profile.hpp"
#include "bour/surface.hpp"

namespace bour {

struct InvariantPair {
  double closed = 0.0;
  double oracle = 0.0;
  double discrepancy() const;
};

struct OmegaEntry {
  int i = 0;
  double closed = 0.0;
  double oracle = 0.0;
};

struct InvariantReport {
  InvariantPair kappa_nu;
  InvariantPair kappa_t;
  std::vector<OmegaEntry> omegas;  // i = 1.. up to the first non-vanishing rung
  std::optional<InvariantPair> beta;
  double max_discrepancy = 0.0;
};

// Closed forms in terms of U(0), U^(j)(0), rho(0).
double kappa_nu(const EdgeData& data);
double kappa_t(const EdgeData& data);
// 1 <= i <= n-1; for i > 1 the lower rungs U^(n+j)(0), j < i, must vanish.
double omega(const EdgeData& data, int i);
double beta(const EdgeData& data);

// Oracles evaluated from the parametrization at (0, t) with xi = d/dt, eta = d/ds.
double kappa_nu_numeric(const EdgeData& data, double t = 0.0);
double kappa_t_numeric(const EdgeData& data, double t = 0.0);
// 1 <= i <= n; i = n gives the bias beta.
double omega_numeric(const EdgeData& data, int i, double t = 0.0);
double beta_numeric(const EdgeData& data, double t = 0.0);

// Unit normal along the singular curve s = 0.
Vec3 unit_normal_at_singular(const EdgeData& data, double t);
// True when U^(n+j)(0) vanishes for j = 1..upto.
bool ladder_vanishes(const EdgeData& data, int upto);

InvariantReport compute_invariants(const EdgeData& data);

}  // namespace bour
