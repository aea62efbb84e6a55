#pragma once

// Nonnegative step functions with compact support inside (0, inf): the test
// functions the oracle maximizes ratios over.  Value h_k on (t_{k-1}, t_k),
// zero outside (t_0, t_n).  Plain-mass primitives (∫ f over intervals) are
// exact piecewise arithmetic; weighted inner integrals live with the oracle.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cesembed {

struct StepFunction {
  std::vector<double> breakpoints;  // t_0 < t_1 < ... < t_n, all positive
  std::vector<double> heights;      // h_1..h_n, nonnegative

  StepFunction() = default;
  StepFunction(std::vector<double> bp, std::vector<double> h)
      : breakpoints(std::move(bp)), heights(std::move(h)) {
    validate();
  }

  static StepFunction indicator(double a, double b, double height = 1.0) {
    return StepFunction({a, b}, {height});
  }

  void validate() const {
    if (breakpoints.size() < 2 || heights.size() + 1 != breakpoints.size())
      throw std::invalid_argument("StepFunction: need n+1 breakpoints for n >= 1 heights");
    if (!(breakpoints.front() > 0.0))
      throw std::invalid_argument("StepFunction: support must lie inside (0, inf)");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
      if (!(breakpoints[i] < breakpoints[i + 1]) || !std::isfinite(breakpoints[i + 1]))
        throw std::invalid_argument("StepFunction: breakpoints must be finite and strictly increasing");
    for (double h : heights)
      if (!(h >= 0.0) || !std::isfinite(h))
        throw std::invalid_argument("StepFunction: heights must be finite and nonnegative");
  }

  std::size_t pieces() const { return heights.size(); }
  double support_lo() const { return breakpoints.front(); }
  double support_hi() const { return breakpoints.back(); }

  bool is_zero() const {
    return std::all_of(heights.begin(), heights.end(), [](double h) { return h == 0.0; });
  }

  double operator()(double t) const {
    if (!(t > breakpoints.front()) || !(t < breakpoints.back())) return 0.0;
    std::size_t j = piece_index(t);
    return heights[j];
  }

  // Index of the piece (t_{j}, t_{j+1}] containing t; requires t in support.
  std::size_t piece_index(double t) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
    std::size_t j = std::size_t(it - breakpoints.begin());
    if (j == 0) return 0;
    if (j >= breakpoints.size()) return heights.size() - 1;
    return j - 1;
  }

  // ∫_a^b f, exact piecewise arithmetic.
  double mass(double a, double b) const {
    a = std::max(a, breakpoints.front());
    b = std::min(b, breakpoints.back());
    if (!(a < b)) return 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < heights.size(); ++k) {
      double lo = std::max(a, breakpoints[k]);
      double hi = std::min(b, breakpoints[k + 1]);
      if (lo < hi) total += heights[k] * (hi - lo);
    }
    return total;
  }

  double total_mass() const { return mass(breakpoints.front(), breakpoints.back()); }
  // ∫_t^inf f and ∫_0^t f.
  double mass_from(double t) const { return mass(t, breakpoints.back()); }
  double mass_to(double t) const { return mass(breakpoints.front(), t); }
};

}  // namespace cesembed
