#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cesembed/errors.hpp"
#include "cesembed/reverse_hardy.hpp"

using namespace cesembed;

namespace {

Weight exp_minus() { return Weight::analytic({{1.0, 0, 0, -1.0, 0, 0.0, kInf}}); }
Weight exp_minus2() { return Weight::analytic({{1.0, 0, 0, -2.0, 0, 0.0, kInf}}); }

Weight scaled(const Weight& base, double lambda) {
  std::vector<AnalyticSegment> segs = base.segments();
  for (auto& s : segs) s.c *= lambda;
  return Weight::analytic(segs);
}

}  // namespace

TEST_CASE("q <= p, p < 1: supremum form", "[reverse-hardy]") {
  // p = q = 1/2, v = w = e^-t: V = v^{1/(1-p)} = e^{-2t}, so
  // W(t)^{-2} * int_t^inf V = e^{2t} * e^{-2t}/2 = 1/2 for every t.
  auto r = reverse_hardy_constant(0.5, 0.5, exp_minus(), exp_minus());
  CHECK(r.case_tag == "R1");
  CHECK(r.value.value() == Catch::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("q <= p, p = 1: essential-supremum form", "[reverse-hardy]") {
  // p = 1, q = 1/2, v = e^-2t, w = e^-t:
  // W(t)^{-2} * (esssup_{(t,inf)} v)^... = e^{2t} * e^{-2t} = 1.
  auto r = reverse_hardy_constant(1.0, 0.5, exp_minus2(), exp_minus());
  CHECK(r.case_tag == "R2");
  CHECK(r.value.value() == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("p < q, p < 1: integral + boundary term", "[reverse-hardy]") {
  // p = 1/2, q = 1, v = w = e^-t: first term
  // (int_0^inf (e^{-2t}/2) e^{2t} e^{-t} dt)^1 = 1/2 and the boundary term
  // (int V)^{(1-p)/p} W(0)^{-1/q} = 1/2; total exactly 1.
  auto r = reverse_hardy_constant(0.5, 1.0, exp_minus(), exp_minus());
  CHECK(r.case_tag == "R3");
  CHECK(r.value.value() == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("p < q, p = 1: essential-supremum integral + boundary term", "[reverse-hardy]") {
  // p = 1, q = 2, v = w = e^-t: first term (int e^{-2t} e^{2t} e^{-t})^{1/2} = 1,
  // boundary term esssup(v) * W(0)^{-1/2} = 1; total exactly 2.
  auto r = reverse_hardy_constant(1.0, 2.0, exp_minus(), exp_minus());
  CHECK(r.case_tag == "R4");
  CHECK(r.value.value() == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("scaling laws: v -> lambda v multiplies by lambda^{1/p}, w -> lambda w by lambda^{-1/q}",
          "[reverse-hardy]") {
  const double base = reverse_hardy_constant(0.5, 0.5, exp_minus(), exp_minus()).value.value();
  const double base3 = reverse_hardy_constant(0.5, 1.0, exp_minus(), exp_minus()).value.value();
  for (double lambda : {1e-2, 1e2}) {
    auto v1 = reverse_hardy_constant(0.5, 0.5, scaled(exp_minus(), lambda), exp_minus());
    CHECK(v1.value.value() == Catch::Approx(base * lambda * lambda).epsilon(1e-6));
    auto w1 = reverse_hardy_constant(0.5, 0.5, exp_minus(), scaled(exp_minus(), lambda));
    CHECK(w1.value.value() ==
          Catch::Approx(base * std::pow(lambda, -2.0)).epsilon(1e-6));

    auto v3 = reverse_hardy_constant(0.5, 1.0, scaled(exp_minus(), lambda), exp_minus());
    CHECK(v3.value.value() == Catch::Approx(base3 * lambda * lambda).epsilon(1e-6));
    auto w3 = reverse_hardy_constant(0.5, 1.0, exp_minus(), scaled(exp_minus(), lambda));
    CHECK(w3.value.value() == Catch::Approx(base3 / lambda).epsilon(1e-6));
  }
}

TEST_CASE("zero v gives zero constant", "[reverse-hardy]") {
  CHECK(reverse_hardy_constant(0.5, 0.5, Weight::constant(0.0), exp_minus()).value.is_zero());
  CHECK(reverse_hardy_constant(0.5, 1.0, Weight::constant(0.0), exp_minus()).value.is_zero());
}

TEST_CASE("outer weight with divergent tail is inadmissible", "[reverse-hardy]") {
  // W(t) = int_t^inf w must be finite for the form to make sense.
  CHECK_THROWS_AS(reverse_hardy_constant(0.5, 0.5, exp_minus(), Weight::constant(1.0)),
                  AdmissibilityError);
}

TEST_CASE("p < q needs a nonzero outer weight", "[reverse-hardy]") {
  CHECK_THROWS_AS(reverse_hardy_constant(0.5, 1.0, exp_minus(), Weight::constant(0.0)),
                  AdmissibilityError);
}

TEST_CASE("p > 1 is out of range", "[reverse-hardy]") {
  CHECK_THROWS_AS(reverse_hardy_constant(2.0, 0.5, exp_minus(), exp_minus()),
                  UnsupportedRegimeError);
}
