#include <cmath>
#include <random>

#include "bour/error.hpp"
#include "bour/profile.hpp"
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

}  // namespace

TEST_CASE("both worked examples are valid with V = sin s") {
  for (const auto& p : {oracle::cuspidal_example(), oracle::four_thirds_example()}) {
    const EdgeData d = make_edge_data(p);
    CHECK(d.n() == p.k + 1);
    CHECK(d.U0() == doctest::Approx(1.0));
    for (double s : {-0.6, -0.2, -1e-4, 0.0, 5e-4, 0.05, 0.3, 0.69}) {
      CAPTURE(s);
      CHECK(d.V_at(s) == doctest::Approx(std::sin(s)).epsilon(1e-12).scale(1.0));
    }
    // V's expansion at 0 is that of sin.
    CHECK(d.V_jet0()[1] == doctest::Approx(1.0));
    CHECK(d.V_jet0()[3] == doctest::Approx(-1.0 / 6.0));
  }
}

TEST_CASE("datum structure errors") {
  EdgeParams p{parse_expr("1 + s"), 0.0, 1.0, 1, 1, 1, 1, {-0.5, 0.5}};
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::non_vanishing_low_derivative);

  // k = 2 needs U'' (0) = 0 as well.
  p.U = parse_expr("1 + 0.1*s^2");
  p.k = 2;
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::non_vanishing_low_derivative);
  p.k = 1;
  CHECK_NOTHROW(make_edge_data(p));

  p.U = parse_expr("s^2 - 0.01");
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::non_positive_u);

  p.U = parse_expr("1 + 0.1*s^2");
  p.m = 0.0;
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::invalid_argument);
  p.m = 1.0;
  p.eps1 = 0;
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::invalid_argument);
  p.eps1 = 1;
  p.J = {0.1, 0.5};
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::invalid_argument);
  p.J = {-0.5, 0.5};
  p.k = 0;
  CHECK(code_of([&] { make_edge_data(p); }) == Errc::invalid_argument);
}

TEST_CASE("radicand values") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  CHECK(rho(d, 0.0) == doctest::Approx(std::sqrt(0.96)).epsilon(1e-15));
  // Independent evaluation of the radicand through the jet engine.
  const Jet u = jet_eval(d.U(), 0.4, 0);
  const Jet v = sin(Jet::constant(0.4, 0, 0.4));
  const double r2 = (u * u - 0.04 - u * u * v * v)[0];
  CHECK(rho_squared(d, 0.4) == doctest::Approx(r2).epsilon(1e-14));

  const EdgeData flat = make_edge_data(oracle::cuspidal_example(0.0, 1.1));
  CHECK(rho(flat, 0.0) == doctest::Approx(1.1 * flat.U0()).epsilon(1e-15));

  const EdgeData steep = make_edge_data_unchecked(oracle::cuspidal_example(1.5, 1.0));
  CHECK(code_of([&] { rho(steep, 0.0); }) == Errc::negative_radicand);
  CHECK(code_of([&] { require_star(steep); }) == Errc::star_violation);
  CHECK(code_of([&] { make_edge_data(oracle::cuspidal_example(1.5, 1.0)); }) == Errc::star_violation);
}

TEST_CASE("radicand condition reports") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  const ValidationReport r = check_star(d);
  CHECK(r.star_ok);
  CHECK(r.failures.empty());
  CHECK(r.rho_min > 0.0);
  // Grid oracle for the minimum.
  double lo = 1e300;
  for (int i = 0; i <= 4000; ++i) lo = std::min(lo, rho_squared(d, -0.8 + 1.6 * i / 4000.0));
  CHECK(r.rho_min <= lo + 1e-12);
  CHECK(r.rho_min >= lo - 1e-6);

  const EdgeData edge = make_edge_data_unchecked(oracle::cuspidal_example(1.0, 1.0));
  const ValidationReport bad = check_star(edge);
  CHECK_FALSE(bad.star_ok);
  REQUIRE_FALSE(bad.failures.empty());
  bool at_zero = false;
  for (const auto& f : bad.failures) at_zero = at_zero || f.s == 0.0;
  CHECK(at_zero);
}

TEST_CASE("radicand sign change is located by bisection") {
  // V = sin s makes rho^2 = U^2 cos^2 s - h^2 vanish inside a wide J.
  EdgeParams p = oracle::cuspidal_example(0.2, 1.0);
  p.J = {-1.5, 1.5};
  const EdgeData d = make_edge_data_unchecked(p);
  const ValidationReport r = check_star(d);
  CHECK_FALSE(r.star_ok);
  bool located = false;
  for (const auto& f : r.failures) {
    if (std::abs(rho_squared(d, f.s)) < 1e-8) located = true;
  }
  CHECK(located);
}

TEST_CASE("property: radicand shrinks monotonically with the pitch") {
  const EdgeData base = make_edge_data(oracle::cuspidal_example(0.0, 1.0));
  double prev_ok = true;
  for (int i = 0; i <= 40; ++i) {
    const double h = 0.05 * i;
    const EdgeData d = base.with_shape(h, 1.0);
    const bool ok = check_star(d, 256).star_ok;
    if (!prev_ok) CHECK_FALSE(ok);
    prev_ok = ok;
    if (i == 0) continue;
    const EdgeData prev = base.with_shape(h - 0.05, 1.0);
    for (double s = -0.8; s <= 0.8; s += 0.1) CHECK(rho_squared(prev, s) >= rho_squared(d, s));
  }
}

TEST_CASE("property: x is real and bounded by the radicand") {
  std::mt19937_64 rng(99);
  for (int k : {1, 2}) {
    for (int trial = 0; trial < 10; ++trial) {
      const EdgeData d = oracle::random_datum(rng, k);
      for (int i = 0; i <= 30; ++i) {
        const double s = d.J().lo + d.J().width() * i / 30.0;
        const double r2 = rho_squared(d, s);
        CHECK(r2 > 0.0);
        CHECK(d.m() * d.m() * d.U_at(s) * d.U_at(s) - d.h() * d.h() >= r2);
      }
    }
  }
}

TEST_CASE("property: validation ignores the signs") {
  std::mt19937_64 rng(4);
  for (double h : {0.2, 0.7, 1.0, 1.3}) {
    const EdgeData d = make_edge_data_unchecked(oracle::cuspidal_example(h, 1.0));
    const ValidationReport ref = check_star(d);
    for (int mask = 0; mask < 8; ++mask) {
      const EdgeData f =
          d.with_signs(mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1);
      const ValidationReport r = check_star(f);
      CHECK(r.star_ok == ref.star_ok);
      CHECK(r.rho_min == ref.rho_min);
      REQUIRE(r.failures.size() == ref.failures.size());
      for (std::size_t i = 0; i < r.failures.size(); ++i) {
        CHECK(r.failures[i].condition == ref.failures[i].condition);
        CHECK(r.failures[i].s == ref.failures[i].s);
      }
    }
  }
}

TEST_CASE("V near the switch radius agrees from both sides") {
  const EdgeData d = make_edge_data(oracle::four_thirds_example());
  for (double s : {9.99e-4, 1e-3, 1.001e-3, -1e-3}) {
    CHECK(d.V_at(s) == doctest::Approx(std::sin(s)).epsilon(1e-9));
  }
}
