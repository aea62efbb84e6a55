#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cesembed/errors.hpp"
#include "cesembed/problem.hpp"

using namespace cesembed;
using Catch::Approx;

namespace {

Weight unit() { return Weight::constant(1.0); }

ParamValue pv(const char* text) { return ParamValue::parse(text); }

// A weight exercising every analytic feature: 2 t^{0.5} (1+t)^{-3} e^{-0.2 t} e^{-0.1/t}.
Weight busy_weight() { return Weight::analytic({{2.0, 0.5, -3.0, -0.2, -0.1, 0.0, kInf}}); }

}  // namespace

TEST_CASE("reduction with unit weights rescales exponents only", "[transforms]") {
  auto red = reduce_embedding(pv("2"), pv("1"), pv("1"), pv("1"), unit(), unit(), unit(), unit());
  REQUIRE(red.params.p.exact.has_value());
  CHECK(*red.params.p.exact == Rational(1, 2));
  CHECK(*red.params.q.exact == Rational(1, 2));
  CHECK(*red.params.theta.exact == Rational(1, 2));
  for (double t : {0.3, 1.0, 7.0}) {
    CHECK(red.u(t) == Approx(1.0));
    CHECK(red.v(t) == Approx(1.0));
    CHECK(red.w(t) == Approx(1.0));
  }
}

TEST_CASE("reduction of a space against itself cancels the inner weight", "[transforms]") {
  Weight shared_u = Weight::analytic({{3.0, 0, -2.0, 0, 0, 0.0, kInf}});
  Weight shared_v = Weight::analytic({{1.0, 0.5, 0, 0, 0, 0.0, kInf}});
  auto red = reduce_embedding(pv("1"), pv("1"), pv("1"), pv("1"),
                              shared_u, shared_v, shared_u, shared_v);
  CHECK(*red.params.p.exact == Rational(1, 1));
  CHECK(*red.params.q.exact == Rational(1, 1));
  CHECK(*red.params.theta.exact == Rational(1, 1));
  for (double t : {0.1, 1.0, 25.0}) {
    // v = v1^{-1} v2 == 1 when the inner weights coincide, u = w = u1.
    CHECK(red.v(t) == Approx(1.0));
    CHECK(red.u(t) == Approx(shared_u(t)));
    CHECK(red.w(t) == Approx(shared_u(t)));
  }
}

TEST_CASE("reduction exponent arithmetic", "[transforms]") {
  // p = p2/p1, q = q2/p1, theta = q1/p1.
  auto red = reduce_embedding(pv("1"), pv("2"), pv("1/2"), pv("1"),
                              unit(), unit(), unit(), unit());
  CHECK(*red.params.p.exact == Rational(1, 2));
  CHECK(*red.params.q.exact == Rational(1, 1));
  CHECK(*red.params.theta.exact == Rational(2, 1));
  CHECK(classify(red.params) == Regime::T3b);
}

TEST_CASE("reduction weight assembly", "[transforms]") {
  // u = u2^{q2}, v = v1^{-p2} v2^{p2}, w = u1^{q1}, all pointwise.
  Weight u1 = Weight::analytic({{1.0, 0, -1.0, 0, 0, 0.0, kInf}});
  Weight v1 = Weight::analytic({{2.0, 0, 0, 0, 0, 0.0, kInf}});
  Weight u2 = Weight::analytic({{1.0, 0, -2.0, 0, 0, 0.0, kInf}});
  Weight v2 = Weight::analytic({{1.0, 1.0, 0, 0, 0, 0.0, kInf}});
  auto red = reduce_embedding(pv("2"), pv("3"), pv("1"), pv("2"), u1, v1, u2, v2);
  for (double t : {0.2, 1.0, 9.0}) {
    CHECK(red.u(t) == Approx(std::pow(u2(t), 2.0)));
    CHECK(red.v(t) == Approx(std::pow(v1(t), -1.0) * v2(t)));
    CHECK(red.w(t) == Approx(std::pow(u1(t), 3.0)));
  }
}

TEST_CASE("reduction rejects degenerate data", "[transforms]") {
  Weight zero_gap = Weight::analytic({{1.0, 0, 0, 0, 0, 1.0, kInf}});  // vanishes on (0,1)
  CHECK_THROWS_AS(reduce_embedding(pv("1"), pv("1"), pv("1"), pv("1"),
                                   unit(), zero_gap, unit(), unit()),
                  DegenerateWeightError);
  CHECK_THROWS_AS(reduce_embedding(pv("0"), pv("1"), pv("1"), pv("1"),
                                   unit(), unit(), unit(), unit()),
                  std::invalid_argument);
}

TEST_CASE("pointwise product of analytic weights is exact", "[transforms]") {
  Weight a = Weight::analytic({{2.0, 1.0, -1.0, -0.5, 0, 0.0, kInf}});
  Weight b = Weight::analytic({{3.0, -0.5, 0, 0.25, 0, 0.0, 4.0}});
  Weight prod = pointwise_product(a, b);
  CHECK(prod.kind() == Weight::Kind::Analytic);
  for (double t : {0.05, 1.0, 3.9}) CHECK(prod(t) == Approx(a(t) * b(t)));
  CHECK(prod(5.0) == 0.0);  // outside b's support
}

TEST_CASE("pointwise product with a tabulated factor samples the product", "[transforms]") {
  Weight a = Weight::tabulated({{0.5, 2.0}, {1.0, 1.0}, {2.0, 0.5}});
  Weight b = Weight::analytic({{1.0, 0, -1.0, 0, 0, 0.0, kInf}});
  Weight prod = pointwise_product(a, b);
  CHECK(prod.kind() == Weight::Kind::Tabulated);
  for (double t : {0.5, 1.0, 2.0}) CHECK(prod(t) == Approx(a(t) * b(t)));
}

TEST_CASE("half-line inversion matches its definition pointwise", "[transforms]") {
  Weight x = busy_weight();
  double e = 1.5;
  Weight xt = invert_weight(x, e);
  for (double t : {0.01, 0.3, 1.0, 4.0, 50.0})
    CHECK(xt(t) == Approx(std::pow(t, -2.0 / e) * x(1.0 / t)).epsilon(1e-12));
}

TEST_CASE("inverting a pure power", "[transforms]") {
  // t^{-a} maps to t^{a - 2/e}.
  double a = 0.7, e = 2.5;
  Weight x = Weight::analytic({{1.0, -a, 0, 0, 0, 0.0, kInf}});
  Weight xt = invert_weight(x, e);
  for (double t : {0.2, 1.0, 8.0}) CHECK(xt(t) == Approx(std::pow(t, a - 2.0 / e)));

  // The unit weight with e = 2 maps to 1/t.
  Weight ut = invert_weight(unit(), 2.0);
  for (double t : {0.5, 3.0}) CHECK(ut(t) == Approx(1.0 / t));
}

TEST_CASE("half-line inversion is an involution", "[transforms]") {
  double e = 0.8;
  SECTION("analytic, exact") {
    Weight x = busy_weight();
    Weight back = invert_weight(invert_weight(x, e), e);
    for (double t : {0.02, 0.7, 1.0, 13.0}) CHECK(back(t) == Approx(x(t)).epsilon(1e-14));
  }
  SECTION("analytic with interior breakpoints") {
    Weight x = Weight::analytic({{1.0, 0, 0, 0, 0, 0.0, 2.0}, {4.0, -1.0, 0, 0, 0, 2.0, kInf}});
    Weight back = invert_weight(invert_weight(x, e), e);
    for (double t : {0.5, 1.9, 2.1, 40.0}) CHECK(back(t) == Approx(x(t)).epsilon(1e-14));
  }
  SECTION("tabulated, at the nodes") {
    Weight x = Weight::tabulated({{0.25, 3.0}, {1.0, 2.0}, {4.0, 0.5}});
    Weight back = invert_weight(invert_weight(x, e), e);
    for (double t : {0.25, 1.0, 4.0}) CHECK(back(t) == Approx(x(t)).epsilon(1e-10));
  }
}

TEST_CASE("dual-form weight pair maps through the inversion", "[transforms]") {
  Weight ui = Weight::analytic({{1.0, 0, -2.0, 0, 0, 0.0, kInf}});
  Weight vi = Weight::analytic({{1.0, 0.5, 0, 0, 0, 0.0, kInf}});
  auto [u, v] = copson_to_cesaro(pv("2"), pv("1/2"), ui, vi);
  for (double t : {0.1, 1.0, 10.0}) {
    CHECK(u(t) == Approx(std::pow(t, -1.0) * ui(1.0 / t)).epsilon(1e-12));
    CHECK(v(t) == Approx(std::pow(t, -4.0) * vi(1.0 / t)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(copson_to_cesaro(pv("0"), pv("1"), ui, vi), std::invalid_argument);
}
