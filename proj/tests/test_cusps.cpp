#include <Eigen/LU>
#include <cmath>
#include <random>

#include "bour/cusps.hpp"
#include "bour/error.hpp"
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

struct Standard {
  const char* x;
  const char* y;
  CuspTag tag;
};

const Standard kStandard[] = {{"s^2", "s^3", CuspTag::cusp32},
                              {"s^2", "s^5", CuspTag::cusp52},
                              {"s^2", "s^7", CuspTag::cusp72},
                              {"s^3", "s^4", CuspTag::cusp43},
                              {"s^3", "s^5", CuspTag::cusp53}};

PlaneCurveJet standard(const Standard& c, int order = 9) {
  return PlaneCurveJet::from_functions(parse_expr(c.x), parse_expr(c.y), 0.0, order);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TEST_CASE("standard cusps") {
  const CuspType c23 = classify_plane_cusp(standard(kStandard[0]));
  CHECK(c23.tag == CuspTag::cusp32);
  CHECK(c23.witnesses.at("det(g2,g3)") == doctest::Approx(12.0));

  const CuspType c25 = classify_plane_cusp(standard(kStandard[1]));
  CHECK(c25.tag == CuspTag::cusp52);
  CHECK(c25.witnesses.at("c1") == 0.0);
  CHECK(c25.witnesses.at("det(g2,3g5-10c1g4)") == doctest::Approx(720.0));

  const CuspType c27 = classify_plane_cusp(standard(kStandard[2]));
  CHECK(c27.tag == CuspTag::cusp72);
  CHECK(c27.witnesses.at("c1") == 0.0);
  CHECK(c27.witnesses.at("c2") == 0.0);

  const CuspType c34 = classify_plane_cusp(standard(kStandard[3]));
  CHECK(c34.tag == CuspTag::cusp43);
  CHECK(c34.witnesses.at("det(g3,g4)") == doctest::Approx(144.0));

  const CuspType c35 = classify_plane_cusp(standard(kStandard[4]));
  CHECK(c35.tag == CuspTag::cusp53);
  CHECK(c35.witnesses.at("det(g3,g5)") == doctest::Approx(720.0));

  CHECK(std::string(cusp_tag_name(CuspTag::cusp72)) == "7/2");
  CHECK(std::string(cusp_tag_name(CuspTag::undetermined)) == "undetermined");
}

TEST_CASE("non-cusps") {
  auto tag = [](const char* x, const char* y) {
    return classify_plane_cusp(
               PlaneCurveJet::from_functions(parse_expr(x), parse_expr(y), 0.0, 9))
        .tag;
  };
  CHECK(tag("s", "s^2") == CuspTag::regular);
  CHECK(tag("s^2", "s^9") == CuspTag::undetermined);
  CHECK(tag("s^2", "s^4") == CuspTag::undetermined);
  CHECK(tag("s^3", "s^6") == CuspTag::undetermined);
  CHECK(tag("s^4", "s^5") == CuspTag::undetermined);
  CHECK(tag("0*s", "0*s") == CuspTag::undetermined);
  CHECK_THROWS_AS(classify_plane_cusp(standard(kStandard[0], 6)), Error);
}

TEST_CASE("reparametrization of the standard 7/2 cusp") {
  const ReparamCheck r = reparam_invariance_check(standard(kStandard[2]), parse_expr("s + s^2"));
  CHECK(r.original.tag == CuspTag::cusp72);
  CHECK(r.reparametrized.tag == CuspTag::cusp72);
  CHECK(r.predicted_c1 == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(std::abs(r.recomputed_c1 - 6.0) < 1e-8);

  const ReparamCheck id = reparam_invariance_check(standard(kStandard[1]), parse_expr("s"));
  CHECK(id.reparametrized.tag == id.original.tag);
  CHECK(id.reparametrized.witnesses == id.original.witnesses);

  CHECK(code_of([] { reparam_invariance_check(standard(kStandard[0]), parse_expr("s^2")); }) ==
        Errc::not_diffeo);
  CHECK(code_of([] { reparam_invariance_check(standard(kStandard[0]), parse_expr("s + 1")); }) ==
        Errc::invalid_argument);

  // gamma'' = 0: no c1 to predict.
  const ReparamCheck n3 = reparam_invariance_check(standard(kStandard[3]), parse_expr("s + s^2"));
  CHECK(n3.reparametrized.tag == CuspTag::cusp43);
  CHECK(std::isnan(n3.predicted_c1));
}

TEST_CASE("target diffeomorphism") {
  const PlaneMap phi = [](const Jet& x, const Jet& y) {
    return std::array<Jet, 2>{x + y * y, y + x * x};
  };
  CHECK(classify_plane_cusp(apply_plane_map(standard(kStandard[0]), phi)).tag == CuspTag::cusp32);
}

TEST_CASE("property: random reparametrizations and target maps preserve the tag") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> slope(0.5, 2.0), coef(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  for (const auto& c : kStandard) {
    const PlaneCurveJet base = standard(c, 12);
    int mismatches = 0;
    double worst_c1 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double a = (coin(rng) ? 1 : -1) * slope(rng);
      const SmoothFn phi = parse_expr(num(a) + "*s + " + num(coef(rng)) + "*s^2 + " +
                                      num(coef(rng)) + "*s^3 + " + num(coef(rng)) + "*s^4");
      const ReparamCheck r = reparam_invariance_check(base, phi);
      if (r.reparametrized.tag != c.tag) ++mismatches;
      if (!std::isnan(r.predicted_c1)) {
        worst_c1 = std::max(worst_c1, std::abs(r.predicted_c1 - r.recomputed_c1));
      }

      Eigen::Matrix2d A;
      do {
        A << coef(rng) * 2, coef(rng) * 2, coef(rng) * 2, coef(rng) * 2;
      } while (std::abs(A.determinant()) < 0.2);
      const double q[6] = {coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng)};
      const PlaneMap map = [&](const Jet& x, const Jet& y) {
        return std::array<Jet, 2>{A(0, 0) * x + A(0, 1) * y + q[0] * x * x + q[1] * x * y +
                                      q[2] * y * y,
                                  A(1, 0) * x + A(1, 1) * y + q[3] * x * x + q[4] * x * y +
                                      q[5] * y * y};
      };
      if (classify_plane_cusp(apply_plane_map(base, map)).tag != c.tag) ++mismatches;
    }
    CAPTURE(cusp_tag_name(c.tag));
    CHECK(mismatches == 0);
    CHECK(worst_c1 < 1e-8);
  }
}

TEST_CASE("property: scaling the curve keeps the tag") {
  for (const auto& c : kStandard) {
    for (double lambda : {1e-3, -0.5, 7.0, 1e3}) {
      const PlaneCurveJet base = standard(c);
      const PlaneCurveJet scaled(base.x() * lambda, base.y() * lambda);
      CHECK(classify_plane_cusp(scaled).tag == c.tag);
    }
  }
}

TEST_CASE("canonical parameter of a symmetric parabola") {
  const CanonicalParameter cp =
      canonical_parameter(parse_expr("s^2/2"), parse_expr("s^2/2"), 0.0, 1, {-1.0, 1.0});
  const double c = std::pow(2.0, 0.25);
  for (double u : {-0.9, -0.3, -1e-4, 0.0, 5e-4, 0.2, 1.0}) {
    CHECK(std::abs(cp.s_of_u(u) - c * u) < 1e-9);
    CHECK(std::abs(cp.s_exact(u) - c * u) < 1e-9);
  }
  for (double s : {-1.1, 0.01, 0.5}) CHECK(std::abs(cp.u_of_s(s) - s / c) < 1e-9);
}

TEST_CASE("canonical parameter fixed point") {
  // ||gamma'|| = |u| already.
  const CanonicalParameter cp =
      canonical_parameter(parse_expr("cos(s) + s*sin(s) - 1"), parse_expr("sin(s) - s*cos(s)"),
                          0.0, 1, {-1.0, 1.5});
  for (int i = 0; i <= 50; ++i) {
    const double u = -1.0 + 2.5 * i / 50.0;
    CHECK(std::abs(cp.s_of_u(u) - u) < 1e-9);
  }
}

TEST_CASE("canonical parameter of a regular curve is arc length") {
  const CanonicalParameter cp =
      canonical_parameter(parse_expr("2*cos(s)"), parse_expr("2*sin(s)"), 0.0, 0, {-1.0, 1.0});
  for (double u : {-1.0, -0.4, 0.3, 1.0}) CHECK(std::abs(cp.s_of_u(u) - 2 * u) < 1e-9);
}

TEST_CASE("property: canonical parameter identity at 100 points") {
  struct Case {
    const char* x;
    const char* y;
    double u0;
    int k;
    Interval dom;
  };
  const Case cases[] = {{"s^2 + s^3", "s^3 - s^2/2", 0.0, 1, {-0.5, 0.6}},
                        {"(s - 0.3)^3*(1 + s)", "(s - 0.3)^4 + 2*(s - 0.3)^3", 0.3, 2, {-0.2, 0.9}},
                        {"exp(s) - 1 - s", "sin(s) - s + 3*s^2", 0.0, 1, {-1.0, 1.0}}};
  for (const auto& c : cases) {
    const SmoothFn x = parse_expr(c.x), y = parse_expr(c.y);
    const CanonicalParameter cp = canonical_parameter(x, y, c.u0, c.k, c.dom);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double s = cp.s_range().lo + cp.s_range().width() * (i + 0.5) / 100.0;
      const double u = cp.u_of_s(s);
      const double speed =
          std::hypot(jet_eval(x, u, 1)[1], jet_eval(y, u, 1)[1]) * std::abs(cp.du_ds(s));
      worst = std::max(worst, std::abs(speed - std::pow(std::abs(s), c.k)));
      CHECK(std::abs(cp.s_of_u(u) - s) < 1e-9);
    }
    CAPTURE(c.x);
    CHECK(worst < 1e-6);
    // Monotone table.
    for (std::size_t i = 1; i < cp.s_nodes().size(); ++i) {
      CHECK(cp.s_nodes()[i] > cp.s_nodes()[i - 1]);
    }
  }
}

TEST_CASE("canonical parameter multiplicity errors") {
  CHECK(code_of([] {
          canonical_parameter(parse_expr("s"), parse_expr("s^2"), 0.0, 1, {-1.0, 1.0});
        }) == Errc::wrong_multiplicity);
  CHECK(code_of([] {
          canonical_parameter(parse_expr("s^3"), parse_expr("s^4"), 0.0, 1, {-1.0, 1.0});
        }) == Errc::wrong_multiplicity);
}

TEST_CASE("edge types of the worked examples") {
  const EdgeData d = make_edge_data(oracle::cuspidal_example());
  const CuspType a = classify_edge(d);
  CHECK(a.tag == CuspTag::cusp32);
  CHECK(a.witnesses.at("U^(3)(0)") == doctest::Approx(2.0));
  CHECK(classify_edge_via_profile(d).tag == CuspTag::cusp32);

  const EdgeData e = make_edge_data(oracle::four_thirds_example());
  const CuspType b = classify_edge(e);
  CHECK(b.tag == CuspTag::cusp43);
  CHECK(b.witnesses.at("U^(4)(0)") == doctest::Approx(6.0));
  CHECK(classify_edge_via_profile(e).tag == CuspTag::cusp43);
}

TEST_CASE("higher edge types agree both ways") {
  struct Case {
    const char* U;
    int k;
    CuspTag tag;
  };
  const Case cases[] = {{"1 + s^5/120", 1, CuspTag::cusp52},
                        {"1 + s^4/10 + s^5/120", 1, CuspTag::cusp52},
                        {"1 + s^7/5040", 1, CuspTag::cusp72},
                        {"1 + s^4/5 - s^6/7 + s^7/500", 1, CuspTag::cusp72},
                        {"1 + s^5/120", 2, CuspTag::cusp53},
                        {"1 + s^6/200 + 0.01*s^5", 2, CuspTag::cusp53},
                        {"1 + s^8", 1, CuspTag::undetermined},
                        {"1 + s^6", 2, CuspTag::undetermined}};
  for (const auto& c : cases) {
    for (double h : {0.0, 0.3}) {
      const EdgeData d = make_edge_data(parse_expr(c.U), h, 1.0, 1, 1, -1, c.k, {-0.3, 0.3});
      CAPTURE(c.U);
      CAPTURE(h);
      CHECK(classify_edge(d).tag == c.tag);
      CHECK(classify_edge_via_profile(d).tag == c.tag);
    }
  }
  const EdgeData k3 = make_edge_data(parse_expr("1 + 0.01*s^4"), 0.0, 1.0, 1, 1, 1, 3, {-0.3, 0.3});
  CHECK(code_of([&] { classify_edge(k3); }) == Errc::unsupported_k);
}

TEST_CASE("property: edge classification routes agree on a random corpus") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 24; ++i) {
    const EdgeData d = oracle::random_datum(rng, 1 + i % 2);
    const CuspType a = classify_edge(d);
    CHECK(a.tag == (d.k() == 1 ? CuspTag::cusp32 : CuspTag::cusp43));
    CHECK(classify_edge_via_profile(d).tag == a.tag);
  }
}
