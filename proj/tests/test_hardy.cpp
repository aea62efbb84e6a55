#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cesembed/errors.hpp"
#include "cesembed/hardy.hpp"

using namespace cesembed;

namespace {

Weight chi01() { return Weight::analytic({{1.0, 0, 0, 0, 0, 0.0, 1.0}}); }
Weight exp_plus() { return Weight::analytic({{1.0, 0, 0, 1.0, 0, 0.0, kInf}}); }
Weight exp_minus() { return Weight::analytic({{1.0, 0, 0, -1.0, 0, 0.0, kInf}}); }

Weight scaled(const Weight& base, double lambda) {
  std::vector<AnalyticSegment> segs = base.segments();
  for (auto& s : segs) s.c *= lambda;
  return Weight::analytic(segs);
}

}  // namespace

TEST_CASE("sup-form constant: p <= q closed form", "[hardy]") {
  // v = e^t, w = chi_(0,1), p = q = 2:
  // sup_t (min(t,1))^{1/2} (e^{-t})^{1/2} -> attained at t = 1, value e^{-1/2}.
  auto r = hardy_constant(2.0, 2.0, exp_plus(), chi01());
  CHECK(r.case_tag == "H1");
  CHECK(r.value.value() == Catch::Approx(std::exp(-0.5)).epsilon(1e-9));
}

TEST_CASE("integral-form constant: q < p closed form", "[hardy]") {
  // Same weights, p = 2, q = 1: the integral collapses to
  // int_0^1 t^2 e^-t dt + int_1^inf e^-t dt = 2 - 4/e, constant (2-4/e)^{1/2}.
  auto r = hardy_constant(2.0, 1.0, exp_plus(), chi01());
  CHECK(r.case_tag == "H2");
  CHECK(r.value.value() == Catch::Approx(std::sqrt(2.0 - 4.0 / std::exp(1.0))).epsilon(1e-9));
}

TEST_CASE("essential-supremum form", "[hardy]") {
  // esssup_{(0,t)} w * (int_t^inf v^{1-p'})^{1/p'} with the sup attained
  // toward t -> 0; both variants give exactly 1.
  auto a = hardy_sup_constant(2.0, exp_plus(), exp_minus());
  CHECK(a.value.value() == Catch::Approx(1.0).epsilon(1e-6));

  auto b = hardy_sup_constant(2.0, exp_plus(), Weight::constant(1.0));
  CHECK(b.value.value() == Catch::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("zero outer weight gives zero constant", "[hardy]") {
  CHECK(hardy_constant(2.0, 2.0, exp_plus(), Weight::constant(0.0)).value.is_zero());
  CHECK(hardy_constant(2.0, 1.0, exp_plus(), Weight::constant(0.0)).value.is_zero());
  CHECK(hardy_sup_constant(2.0, exp_plus(), Weight::constant(0.0)).value.is_zero());
}

TEST_CASE("scaling laws: v -> lambda v multiplies by lambda^{-1/p}, w -> lambda w by lambda^{1/q}",
          "[hardy]") {
  const double base1 = hardy_constant(2.0, 2.0, exp_plus(), chi01()).value.value();
  const double base2 = hardy_constant(2.0, 1.0, exp_plus(), chi01()).value.value();
  for (double lambda : {1e-2, 1.0, 1e2}) {
    auto v1 = hardy_constant(2.0, 2.0, scaled(exp_plus(), lambda), chi01());
    CHECK(v1.value.value() ==
          Catch::Approx(base1 * std::pow(lambda, -0.5)).epsilon(1e-6));
    auto w1 = hardy_constant(2.0, 2.0, exp_plus(), scaled(chi01(), lambda));
    CHECK(w1.value.value() ==
          Catch::Approx(base1 * std::pow(lambda, 0.5)).epsilon(1e-6));

    auto v2 = hardy_constant(2.0, 1.0, scaled(exp_plus(), lambda), chi01());
    CHECK(v2.value.value() ==
          Catch::Approx(base2 * std::pow(lambda, -0.5)).epsilon(1e-6));
    auto w2 = hardy_constant(2.0, 1.0, exp_plus(), scaled(chi01(), lambda));
    CHECK(w2.value.value() == Catch::Approx(base2 * lambda).epsilon(1e-6));
  }
}

TEST_CASE("monotonicity in the weights", "[hardy]") {
  const double base = hardy_constant(2.0, 2.0, exp_plus(), chi01()).value.value();
  // Larger w can only increase the constant.
  Weight chi02 = Weight::analytic({{1.0, 0, 0, 0, 0, 0.0, 2.0}});
  CHECK(hardy_constant(2.0, 2.0, exp_plus(), chi02).value.value() >= base * (1.0 - 1e-9));
  // Pointwise larger v (e^{2t} >= e^t on t >= 0) can only decrease it.
  Weight exp2 = Weight::analytic({{1.0, 0, 0, 2.0, 0, 0.0, kInf}});
  CHECK(hardy_constant(2.0, 2.0, exp2, chi01()).value.value() <= base * (1.0 + 1e-9));
}

TEST_CASE("p <= 1 is out of range", "[hardy]") {
  CHECK_THROWS_AS(hardy_constant(1.0, 2.0, exp_plus(), chi01()), UnsupportedRegimeError);
  CHECK_THROWS_AS(hardy_constant(0.5, 2.0, exp_plus(), chi01()), UnsupportedRegimeError);
  CHECK_THROWS_AS(hardy_sup_constant(1.0, exp_plus(), chi01()), UnsupportedRegimeError);
}
