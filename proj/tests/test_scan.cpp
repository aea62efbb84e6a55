#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cesembed/scan.hpp"

using namespace cesembed;

TEST_CASE("finds the maximum of t exp(-t) on the half-line") {
  auto r = maximize_scan([](double t) { return t * std::exp(-t); }, 0.0, kInf);
  CHECK(r.value.value() == Catch::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(r.arg == Catch::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("finds the maximum of t/(1+t)^2") {
  auto r = maximize_scan(
      [](double t) { return t / ((1.0 + t) * (1.0 + t)); }, 0.0, kInf);
  CHECK(r.value.value() == Catch::Approx(0.25).epsilon(1e-9));
  CHECK(r.arg == Catch::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("detects growth toward infinity") {
  auto r = maximize_scan([](double t) { return t; }, 0.0, kInf);
  CHECK(r.value.is_infinite());
}

TEST_CASE("detects growth toward zero") {
  auto r = maximize_scan([](double t) { return 1.0 / t; }, 0.0, kInf);
  CHECK(r.value.is_infinite());
}

TEST_CASE("bounded increasing objective is not mistaken for divergence") {
  auto r = maximize_scan([](double t) { return t * t / (1.0 + t * t); }, 0.0, kInf);
  CHECK_FALSE(r.value.is_infinite());
  CHECK(r.value.value() == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("respects a finite window") {
  auto f = [](double t) { return 1.0 / (1.0 + (t - 3.0) * (t - 3.0)); };
  auto r = maximize_scan(f, 2.0, 5.0);
  CHECK(r.value.value() == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(r.arg == Catch::Approx(3.0).epsilon(1e-5));
  // The peak at 3 lies outside (10, 20); the sup there is at the left edge.
  auto r2 = maximize_scan(f, 10.0, 20.0);
  CHECK(r2.value.value() == Catch::Approx(f(10.0)).margin(1e-6));
}

TEST_CASE("windows outside the default scan range still work") {
  auto f = [](double t) { return t * std::exp(-t / 1e12); };
  auto r = maximize_scan(f, 1e10, kInf);
  CHECK(r.value.value() == Catch::Approx(1e12 * std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("an infinite sample short-circuits to infinity") {
  auto f = [](double t) { return (t > 1.0 && t < 2.0) ? kInf : 0.0; };
  auto r = maximize_scan(f, 0.0, kInf);
  CHECK(r.value.is_infinite());
}

TEST_CASE("empty interval yields zero") {
  auto r = maximize_scan([](double) { return 42.0; }, 2.0, 2.0);
  CHECK(r.value.is_zero());
}

TEST_CASE("non-evaluable points are skipped and counted") {
  reset_diag_counters();
  auto f = [](double t) { return t < 1.0 ? std::nan("") : std::exp(-t) * t; };
  auto r = maximize_scan(f, 0.0, kInf);
  CHECK(r.value.value() == Catch::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(diag_counters().non_evaluable > 0);
  reset_diag_counters();
}
