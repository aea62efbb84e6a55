#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cesembed/quadrature.hpp"

using namespace cesembed;

TEST_CASE("Gauss-Kronrod on finite and half-infinite ranges") {
  auto sq = [](double t) { return t * t; };
  CHECK(integrate_gk(sq, 0.0, 1.0).value == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

  auto expneg = [](double t) { return std::exp(-t); };
  CHECK(integrate_gk(expneg, 0.0, kInf).value == Catch::Approx(1.0).epsilon(1e-10));

  auto gauss = [](double t) { return std::exp(-t * t); };
  CHECK(integrate_gk(gauss, 0.0, kInf).value ==
        Catch::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-10));
}

TEST_CASE("log substitution handles endpoint singularities and tails") {
  auto invsqrt = [](double t) { return 1.0 / std::sqrt(t); };
  CHECK(integrate_log(invsqrt, 0.0, 1.0).value == Catch::Approx(2.0).epsilon(1e-9));

  auto texp = [](double t) { return t * std::exp(-t); };
  CHECK(integrate_log(texp, 0.0, kInf).value == Catch::Approx(1.0).epsilon(1e-9));

  auto invsq = [](double t) { return 1.0 / (t * t); };
  CHECK(integrate_log(invsq, 1.0, kInf).value == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cumulative table reproduces exp(-t) antiderivatives") {
  CumulativeFunction F([](double t) { return std::exp(-t); });
  CHECK(F.from_zero(1.0).value() == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
  CHECK(F.tail(1.0).value() == Catch::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(F.between(0.5, 2.0).value() ==
        Catch::Approx(std::exp(-0.5) - std::exp(-2.0)).epsilon(1e-9));
  CHECK(F.total().value() == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cumulative table flags divergence of 1/t at both ends") {
  CumulativeFunction F([](double t) { return 1.0 / t; });
  CHECK(F.tail(1.0).is_infinite());
  CHECK(F.from_zero(1.0).is_infinite());
  CHECK(F.total().is_infinite());
  CHECK(F.between(1.0, std::exp(1.0)).value() == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cumulative table on the constant function") {
  CumulativeFunction F([](double) { return 1.0; });
  CHECK(F.total().is_infinite());     // tail mass grows a decade at a time
  CHECK(F.tail(5.0).is_infinite());
  CHECK(F.from_zero(2.0).value() == Catch::Approx(2.0).epsilon(1e-9));
  // Narrow interior query must not suffer prefix-difference cancellation.
  CHECK(F.between(1.0, 1.0 + 1e-6).value() == Catch::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("cumulative table integrates an integrable singularity") {
  CumulativeFunction F([](double t) { return 1.0 / std::sqrt(t); });
  CHECK(F.from_zero(1.0).value() == Catch::Approx(2.0).epsilon(1e-8));
  CHECK(F.tail(1.0).is_infinite());  // t^{-1/2} tail diverges
}

TEST_CASE("cumulative table detects exponential blowup") {
  CumulativeFunction F([](double t) { return std::exp(t); });
  CHECK(F.tail(1.0).is_infinite());
  CHECK(F.from_zero(1.0).value() == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-9));
}

TEST_CASE("additivity across interior points") {
  CumulativeFunction F([](double t) { return 1.0 / (1.0 + t * t); });
  double left = F.between(0.3, 7.0).value();
  double right = F.between(7.0, 42.0).value();
  CHECK(left + right == Catch::Approx(F.between(0.3, 42.0).value()).epsilon(1e-10));
  CHECK(F.from_zero(0.3).value() + F.tail(0.3).value() ==
        Catch::Approx(M_PI / 2.0).epsilon(1e-9));
}

TEST_CASE("anchors refine the grid around breakpoints") {
  // Indicator of (2, 3): without anchors the cell boundaries miss the jump.
  auto ind = [](double t) { return (t > 2.0 && t < 3.0) ? 5.0 : 0.0; };
  CumulativeFunction F(ind, {2.0, 3.0});
  CHECK(F.total().value() == Catch::Approx(5.0).epsilon(1e-9));
  CHECK(F.between(2.5, 4.0).value() == Catch::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("explicit divergence hints override the heuristic") {
  EndpointHints hints;
  hints.diverges_at_zero = false;
  hints.diverges_at_inf = true;
  CumulativeFunction F([](double t) { return std::exp(-t); }, {}, hints);
  CHECK(F.tail(1.0).is_infinite());
  CHECK(F.from_zero(1.0).value() == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("mass-ratio heuristics classify standard tails") {
  CHECK(integral_grows_toward_inf([](double t) { return 1.0 / t; }));
  CHECK(integral_grows_toward_inf([](double) { return 1.0; }));
  CHECK_FALSE(integral_grows_toward_inf([](double t) { return std::pow(t, -1.3); }));
  CHECK(integral_grows_toward_zero([](double t) { return 1.0 / t; }));
  CHECK(integral_grows_toward_zero([](double t) { return std::pow(t, -1.3); }));
  CHECK_FALSE(integral_grows_toward_zero([](double t) { return 1.0 / std::sqrt(t); }));
}

TEST_CASE("log-domain products avoid intermediate overflow") {
  LogProduct lp;
  lp.mul_pow(1e200, 3.0);
  lp.mul_pow(1e-200, 3.0);
  CHECK(lp.value() == Catch::Approx(1.0).epsilon(1e-12));

  LogProduct big;
  big.mul_pow(1e200, 5.0);
  CHECK(std::isinf(big.value()));
  CHECK(big.log_value() == Catch::Approx(5.0 * std::log(1e200)).epsilon(1e-12));

  LogProduct z;
  z.mul_pow(0.0, 2.0);
  z.mul_pow(7.0, 1.0);
  CHECK(z.value() == 0.0);

  LogProduct negpow;
  negpow.mul_pow(0.0, -1.0);
  CHECK(std::isinf(negpow.value()));
}

TEST_CASE("log-domain 0 * inf conflict resolves to zero and is counted") {
  reset_diag_counters();
  LogProduct lp;
  lp.mul_pow(0.0, 1.0);
  lp.mul_pow(kInf, 1.0);
  CHECK(lp.value() == 0.0);
  CHECK(diag_counters().log_conflicts >= 1);
  reset_diag_counters();
  CHECK(diag_counters().log_conflicts == 0);
}
