#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <nlohmann/json.hpp>

#include "cesembed/weight.hpp"

using namespace cesembed;

TEST_CASE("constant weight basics") {
  Weight w = Weight::constant(2.0);
  CHECK(w(0.5) == 2.0);
  CHECK(w(1e6) == 2.0);
  CHECK(w.from_zero(3.0).value() == Catch::Approx(6.0).epsilon(1e-9));
  CHECK(w.tail(1.0).is_infinite());
  CHECK(w.diverges_at_inf());
  CHECK_FALSE(w.diverges_at_zero());
  CHECK(w.ess_sup(0.0, kInf).value() == 2.0);
  CHECK(w.power(3.0)(1.7) == Catch::Approx(8.0));
}

TEST_CASE("pure power law t^-2") {
  Weight w = Weight::power_law(1.0, -2.0);
  CHECK(w.diverges_at_zero());
  CHECK_FALSE(w.diverges_at_inf());
  CHECK(w.tail(1.0).value() == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(w.integrate(1.0, 2.0).value() == Catch::Approx(0.5).epsilon(1e-9));
  CHECK(w.from_zero(1.0).is_infinite());
  Weight sq = w.power(-1.0);  // t^2
  CHECK(sq(3.0) == Catch::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("exponential weight exp(-t)") {
  Weight w = Weight::analytic({{1.0, 0.0, 0.0, -1.0, 0.0, 0.0, kInf}});
  CHECK(w.total().value() == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(w.tail(2.0).value() == Catch::Approx(std::exp(-2.0)).epsilon(1e-9));
  CHECK(w.ess_sup(1.0, kInf).value() == Catch::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(w.ess_sup(0.0, 2.0).value() == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(w.power(2.0).total().value() == Catch::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("rational weight t(1+t)^-3") {
  // Integral over (0,inf) is 1/2; the maximum 4/27 sits at t = 1/2.
  Weight w = Weight::analytic({{1.0, 1.0, -3.0, 0.0, 0.0, 0.0, kInf}});
  CHECK(w.total().value() == Catch::Approx(0.5).epsilon(1e-9));
  CHECK(w.ess_sup(0.0, kInf).value() == Catch::Approx(4.0 / 27.0).epsilon(1e-10));
  CHECK(w.ess_sup(2.0, kInf).value() == Catch::Approx(2.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("inverse-exponential factor exp(-1/t)") {
  Weight w = Weight::analytic({{1.0, 0.0, 0.0, 0.0, -1.0, 0.0, kInf}});
  CHECK(w(0.1) == Catch::Approx(std::exp(-10.0)).epsilon(1e-12));
  CHECK(w.ess_sup(0.0, kInf).value() == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(w.diverges_at_inf());   // approaches 1, so the tail mass diverges
  CHECK_FALSE(w.diverges_at_zero());
}

TEST_CASE("segments with gaps, and negative powers poison the gaps") {
  Weight w = Weight::analytic({{1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0},
                               {5.0, 0.0, 0.0, 0.0, 0.0, 2.0, 3.0}});
  CHECK(w(0.5) == 1.0);
  CHECK(w(1.5) == 0.0);
  CHECK(w(2.5) == 5.0);
  CHECK(w(4.0) == 0.0);
  CHECK(w.total().value() == Catch::Approx(6.0).epsilon(1e-9));
  CHECK(w.ess_sup(0.0, kInf).value() == 5.0);
  CHECK(w.between(2.0, 2.5).value() == Catch::Approx(2.5).epsilon(1e-9));

  Weight inv = w.power(-1.0);
  CHECK(inv(0.5) == 1.0);
  CHECK(std::isinf(inv(1.5)));           // gap raised to a negative power
  CHECK(inv(2.5) == Catch::Approx(0.2));
  CHECK(inv.integrate(1.2, 1.8).is_infinite());
  CHECK(inv.integrate(2.1, 2.9).value() == Catch::Approx(0.16).epsilon(1e-9));
}

TEST_CASE("analytic JSON round trip") {
  Weight w = Weight::analytic({{2.0, -0.5, 1.0, -0.25, 0.0, 0.5, 4.0}});
  Weight back = Weight::from_json(w.to_json());
  for (double t : {0.6, 1.0, 2.5, 3.9})
    CHECK(back(t) == Catch::Approx(w(t)).epsilon(1e-12));
}

TEST_CASE("JSON parsing accepts the documented shapes and rejects junk") {
  auto j = nlohmann::json::parse(R"({"segments":[{"c":1,"alpha":0,"gamma":-1}]})");
  Weight w = Weight::from_json(j);
  CHECK(w(2.0) == Catch::Approx(std::exp(-2.0)).epsilon(1e-12));

  auto jinf = nlohmann::json::parse(
      R"({"segments":[{"c":1,"alpha":0,"from":1,"to":"inf"}]})");
  CHECK(Weight::from_json(jinf)(5.0) == 1.0);

  auto jnull = nlohmann::json::parse(
      R"({"segments":[{"c":1,"alpha":0,"from":1,"to":null}]})");
  CHECK(Weight::from_json(jnull)(5.0) == 1.0);

  CHECK_THROWS_AS(Weight::from_json(nlohmann::json::parse(R"({"segments":[{"alpha":0}]})")),
                  WeightFormatError);
  CHECK_THROWS_AS(Weight::from_json(nlohmann::json::parse(R"({"nope":1})")),
                  WeightFormatError);
  CHECK_THROWS_AS(Weight::from_json(nlohmann::json::parse(
                      R"({"segments":[{"c":-1,"alpha":0}]})")),
                  WeightFormatError);
  CHECK_THROWS_AS(Weight::from_json(nlohmann::json::parse(
                      R"({"segments":[{"c":1,"alpha":0,"from":2,"to":1}]})")),
                  WeightFormatError);
  CHECK_THROWS_AS(Weight::from_json(nlohmann::json::parse(
                      R"({"samples":[[1,1],[1,2]]})")),
                  WeightFormatError);
}

TEST_CASE("tabulated weights interpolate log-linearly and extend by power laws") {
  Weight w = Weight::tabulated({{1.0, 2.0}, {10.0, 4.0}});
  // Slope log(4/2)/log(10) = log10(2); extension continues the power law.
  CHECK(w(100.0) == Catch::Approx(8.0).epsilon(1e-12));
  CHECK(w(0.1) == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(w(std::sqrt(10.0)) == Catch::Approx(std::sqrt(8.0)).epsilon(1e-12));

  Weight p = w.power(2.0);  // squares the samples; interpolation commutes
  CHECK(p(100.0) == Catch::Approx(64.0).epsilon(1e-12));
  CHECK(p(std::sqrt(10.0)) == Catch::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("tabulated boundary slopes drive divergence analysis") {
  Weight w = Weight::tabulated({{1.0, 1.0}, {10.0, 0.1}});  // slope -1
  CHECK(w.diverges_at_inf());
  CHECK(w.diverges_at_zero());
  CHECK(w.total().is_infinite());

  Weight conv = Weight::tabulated({{1.0, 1.0}, {10.0, 0.01}});  // slope -2
  CHECK_FALSE(conv.diverges_at_inf());
  CHECK(conv.diverges_at_zero());  // extends as t^-2 toward 0

  Weight flat = Weight::tabulated({{1.0, 3.0}});  // constant extension
  CHECK(flat(0.01) == 3.0);
  CHECK(flat(100.0) == 3.0);
  CHECK(flat.diverges_at_inf());
  CHECK_FALSE(flat.diverges_at_zero());
}

TEST_CASE("tabulated zero cells fall back to linear interpolation") {
  Weight w = Weight::tabulated({{1.0, 0.0}, {2.0, 3.0}});
  CHECK(w(1.5) == Catch::Approx(1.5).epsilon(1e-12));
  CHECK(w(0.5) == 0.0);  // zero boundary extends as zero
  CHECK(w.integrate(1.0, 2.0).value() == Catch::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("ess_sup on tabulated weights looks at nodes, edges, and limits") {
  Weight w = Weight::tabulated({{1.0, 1.0}, {2.0, 5.0}, {4.0, 2.0}});
  CHECK(w.ess_sup(0.0, kInf).value() == 5.0);
  CHECK(w.ess_sup(3.0, 20.0).value() ==
        Catch::Approx(w(3.0)).epsilon(1e-12));  // decreasing beyond the peak
  Weight drop = Weight::tabulated({{1.0, 2.0}, {10.0, 1.0}});
  CHECK(drop.ess_sup(0.0, 1.0).is_infinite());  // rising power law toward 0
}

TEST_CASE("copies share the lazily built table") {
  Weight w = Weight::constant(1.0);
  Weight copy = w;
  CHECK(copy.from_zero(2.0).value() == Catch::Approx(2.0).epsilon(1e-9));
  CHECK(w.from_zero(2.0).value() == Catch::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("weight zero predicate") {
  CHECK(Weight::constant(0.0).is_zero());
  CHECK_FALSE(Weight::constant(1.0).is_zero());
  CHECK(Weight::tabulated({{1.0, 0.0}, {2.0, 0.0}}).is_zero());
}
