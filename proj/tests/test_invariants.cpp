#include <cmath>
#include <random>

#include "bour/error.hpp"
#include "bour/invariants.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bour;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::invalid_argument;
}

EdgeData datum(const char* u, double h, double m, int k, int e1 = 1, int e2 = 1,
               Interval J = {-0.3, 0.3}) {
  return make_edge_data(parse_expr(u), h, m, 1, e1, e2, k, J);
}

}  // namespace

TEST_CASE("normal curvature") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  CHECK(kappa_nu(d) == doctest::Approx(std::sqrt(0.96)).epsilon(1e-12));
  CHECK(std::abs(kappa_nu_numeric(d) - std::sqrt(0.96)) < 1e-9);

  const EdgeData flat = make_edge_data(oracle::cuspidal_example(0.0, 0.8));
  CHECK(kappa_nu(flat) == doctest::Approx(1.0 / 0.8).epsilon(1e-14));

  for (int mask = 0; mask < 8; ++mask) {
    const EdgeData f = d.with_signs(mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1);
    CHECK(kappa_nu(f) == kappa_nu(d));
    CHECK(std::abs(kappa_nu_numeric(f) - kappa_nu(d)) < 1e-9);
  }
}

TEST_CASE("the singular helix has acceleration orthogonal to velocity") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  for (double t : {0.0, 0.7, 2.0}) {
    const Vec3 pt = psi_frame(d, 0.0, t).psi_t;
    // Second t-derivative of the helix (x0 cos(t/m), x0 sin(t/m), h t/m).
    const double th = theta(d, 0.0, t), w = d.eps1() / d.m(), x0 = x_of_s(d, 0.0);
    const Vec3 ptt(-x0 * w * w * std::cos(th), -x0 * w * w * std::sin(th), 0.0);
    CHECK(std::abs(ptt.dot(pt)) < 1e-10);
    const Vec3 nu = unit_normal_at_singular(d, t);
    CHECK(nu.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(nu.dot(pt)) < 1e-12);
  }
  CHECK(std::abs(kappa_nu(d)) * d.m() * d.m() * d.U0() * d.U0() <= d.m() * d.U0());
}

TEST_CASE("cusp-directional torsion") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  CHECK(std::abs(kappa_t(d) - 0.2) < 1e-12);
  CHECK(std::abs(kappa_t_numeric(d) - 0.2) < 1e-6);
  CHECK(kappa_t(make_edge_data(oracle::cuspidal_example(0.0, 1.0))) == 0.0);
  const EdgeData wide = make_edge_data(oracle::cuspidal_example(0.2, 0.5));
  const EdgeData narrow = make_edge_data(oracle::cuspidal_example(0.2, 1.0));
  CHECK(kappa_t(wide) == doctest::Approx(4.0 * kappa_t(narrow)).epsilon(1e-14));

  // Flipping eps1 flips the determinant and its normaliser together.
  const EdgeData flip = d.with_signs(1, -1, -1);
  CHECK(std::abs(kappa_t_numeric(flip) - kappa_t_numeric(d)) < 1e-6);

  // The second term of the two-term formula vanishes: Psi_t . Psi_{s^(k+1)} = 0.
  for (const auto& p : {oracle::cuspidal_example(), oracle::four_thirds_example()}) {
    const EdgeData e = make_edge_data(p);
    const auto jets = psi_jet_at_zero(e, 0.0, e.k() + 1);
    const Vec3 lead(jets[0].derivative(e.k() + 1), jets[1].derivative(e.k() + 1),
                    jets[2].derivative(e.k() + 1));
    CHECK(std::abs(lead.dot(psi_frame(e, 0.0, 0.0).psi_t)) < 1e-9);
  }
}

TEST_CASE("cuspidal curvature closed forms") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  CHECK(d.U_derivative0(3) == doctest::Approx(2.0).epsilon(1e-14));
  const double w23 = -2.0 / std::sqrt(0.96);
  CHECK(omega(d, 1) == doctest::Approx(w23).epsilon(1e-13));
  CHECK(omega(d, 1) == doctest::Approx(-2.0412).epsilon(1e-4));
  CHECK(std::abs(omega_numeric(d, 1) - w23) < 1e-6);

  const EdgeData e = make_edge_data(oracle::four_thirds_example());
  CHECK(e.U_derivative0(4) == doctest::Approx(6.0).epsilon(1e-13));
  const double w34 = -6.0 / (std::pow(2.0, 4.0 / 3.0) * std::sqrt(0.99));
  CHECK(omega(e, 1) == doctest::Approx(w34).epsilon(1e-13));
  CHECK(std::abs(omega_numeric(e, 1) - w34) < 1e-6);

  // Non-front: U^(n+1)(0) = 0.
  const EdgeData nf = datum("1 + 0.5*s^4", 0.2, 1.0, 1);
  CHECK(omega(nf, 1) == 0.0);
  CHECK(std::abs(omega_numeric(nf, 1)) < 1e-6);
}

TEST_CASE("domain of the cuspidal curvatures") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  CHECK(code_of([&] { omega(d, 0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { omega(d, 2); }) == Errc::invalid_argument);
  CHECK(code_of([&] { omega_numeric(d, 0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { omega_numeric(d, 3); }) == Errc::invalid_argument);
  CHECK(code_of([&] { beta(d); }) == Errc::ladder_violated);
  CHECK(code_of([&] { beta_numeric(d); }) == Errc::ladder_violated);

  const EdgeData e = make_edge_data(oracle::four_thirds_example());
  CHECK(code_of([&] { omega(e, 2); }) == Errc::ladder_violated);
  CHECK_NOTHROW(omega(e, 1));
  const EdgeData ladder = datum("1 + 0.3*s^5", 0.1, 1.0, 2);
  CHECK(omega(ladder, 1) == 0.0);
  CHECK(omega(ladder, 2) == doctest::Approx(0.3 * 120 / (std::pow(2.0, 5.0 / 3.0) * std::sqrt(0.99))).epsilon(1e-12));
  CHECK(std::abs(omega_numeric(ladder, 2) - omega(ladder, 2)) < 1e-6);
  CHECK(code_of([&] { beta(ladder); }) == Errc::ladder_violated);
}

TEST_CASE("bias") {
  // k = 1, h = 0: only the first term survives.
  const EdgeData flat = datum("1 + 0.6*s^4/24", 0.0, 1.2, 1);
  CHECK(beta(flat) == doctest::Approx(1.44 * 0.6 / (1.2)).epsilon(1e-12));
  CHECK(std::abs(beta_numeric(flat) - beta(flat)) < 1e-6);

  // k = 1, U^(4)(0) = 0: only the binomial term survives.
  const EdgeData h_only = datum("1 + s^6/720", 0.3, 1.0, 1, 1, -1);
  const double r0 = std::sqrt(1.0 - 0.09);
  CHECK(beta(h_only) == doctest::Approx(3.0 * 0.09 / r0).epsilon(1e-12));
  CHECK(std::abs(beta_numeric(h_only) - beta(h_only)) < 1e-6);

  // Both terms, with the mod-bar correction active.
  const EdgeData both = datum("1 + 0.6*s^4/24", 0.25, 0.9, 1, -1, 1);
  CHECK(std::abs(beta_numeric(both) - beta(both)) < 1e-6);

  // k = 2: ((n-1)!)^2 = 4 and C(5,3) = 10.
  const EdgeData k2 = datum("2 + 0.8*s^6/720", 0.4, 1.1, 2);
  const double u0 = 2.0, m = 1.1, h = 0.4;
  const double rho0 = std::sqrt(m * m * u0 * u0 - h * h);
  const double want = (m * m * u0 * 0.8 / 4.0 - 10.0 * h * h / (m * m * u0 * u0)) / rho0;
  CHECK(beta(k2) == doctest::Approx(want).epsilon(1e-12));
  CHECK(std::abs(beta_numeric(k2) - want) < 1e-6);
}

TEST_CASE("invariants are constant along the singular curve") {
  for (const auto& d : {make_edge_data(oracle::cuspidal_example()),
                        make_edge_data(oracle::four_thirds_example()),
                        datum("1 + 0.6*s^4/24", 0.25, 0.9, 1)}) {
    for (double t : {1.0, 2.0}) {
      CHECK(std::abs(kappa_nu_numeric(d, t) - kappa_nu_numeric(d, 0.0)) < 1e-9);
      CHECK(std::abs(kappa_t_numeric(d, t) - kappa_t_numeric(d, 0.0)) < 1e-6);
      CHECK(std::abs(omega_numeric(d, 1, t) - omega_numeric(d, 1, 0.0)) < 1e-6);
    }
  }
}

TEST_CASE("property: closed forms agree with the oracles on a random corpus") {
  std::mt19937_64 rng(31337);
  std::vector<EdgeData> data = {make_edge_data(oracle::cuspidal_example()),
                                make_edge_data(oracle::four_thirds_example())};
  for (int i = 0; i < 20; ++i) data.push_back(oracle::random_datum(rng, 1 + i % 2));
  for (const auto& d : data) {
    const InvariantReport r = compute_invariants(d);
    CHECK(r.kappa_nu.closed > 0.0);
    CHECK(r.kappa_nu.discrepancy() < 1e-6);
    CHECK(r.kappa_t.discrepancy() < 1e-6);
    REQUIRE_FALSE(r.omegas.empty());
    for (const auto& w : r.omegas) CHECK(std::abs(w.closed - w.oracle) < 1e-6);
    CHECK(r.max_discrepancy < 1e-6);
    // sign(kappa_t) = sign(h).
    CHECK((r.kappa_t.closed > 0) == (d.h() > 0));
    CHECK((r.kappa_t.closed < 0) == (d.h() < 0));
    // Front criterion at the level of the numerator.
    const bool front = std::abs(d.U_derivative0(d.n() + 1)) > d.zero_threshold();
    CHECK((std::abs(r.omegas.front().closed) > 0.0) == front);
  }
}

TEST_CASE("report assembly follows the ladder") {
  const InvariantReport a = compute_invariants(make_edge_data(oracle::cuspidal_example()));
  CHECK(a.omegas.size() == 1);
  CHECK_FALSE(a.beta.has_value());

  const InvariantReport b = compute_invariants(datum("1 + 0.6*s^4/24", 0.25, 0.9, 1));
  CHECK(b.omegas.size() == 1);
  CHECK(b.omegas[0].closed == 0.0);
  REQUIRE(b.beta.has_value());
  CHECK(b.beta->discrepancy() < 1e-6);

  const InvariantReport c = compute_invariants(datum("1 + 0.3*s^5", 0.1, 1.0, 2));
  CHECK(c.omegas.size() == 2);
  CHECK_FALSE(c.beta.has_value());
  const InvariantReport e = compute_invariants(datum("1 + 0.3*s^6", 0.1, 1.0, 2));
  CHECK(e.omegas.size() == 2);
  CHECK(e.beta.has_value());
  CHECK(e.max_discrepancy < 1e-6);
}
