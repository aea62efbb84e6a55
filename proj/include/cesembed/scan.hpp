#pragma once

// Supremum search over open subintervals of (0, inf).
//
// maximize_scan samples the objective on a geometric grid of strictly
// interior points, refines around the best sample with golden-section search
// on the log axis, and probes beyond the window for divergence: if the
// objective keeps growing by more than a fixed factor per decade over
// several consecutive decades toward an open endpoint (or evaluates to
// infinity anywhere), the supremum is reported as infinite.  Non-evaluable
// points (NaN) contribute nothing and bump a diagnostic counter.  The search
// is deterministic: same objective, same window, same result.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cesembed/extended_value.hpp"
#include "cesembed/quadrature.hpp"

namespace cesembed {

struct ScanResult {
  double arg = 0.0;
  ExtendedValue value{0.0};
};

struct ScanOptions {
  int grid = 512;               // geometric sample count
  double window_lo = 1e-9;      // default window when the end is open at 0
  double window_hi = 1e9;       // default window when the end is open at inf
  double log_width_tol = 1e-10; // golden-section termination (log-axis width)
  int divergence_decades = 3;   // sustained-growth decades needed
  double divergence_factor = 2.0;
};

namespace detail {

inline double scan_eval(const std::function<double(double)>& f, double t) {
  double v = f(t);
  if (std::isnan(v)) {
    ++diag_counters().non_evaluable;
    return 0.0;
  }
  return v;
}

// Growth probe marching away from `edge` by decades; `dir` is +1 toward inf,
// -1 toward 0.  Divergent when every step multiplies the value by at least
// `factor` (ending positive), or any probe is infinite.
inline bool scan_growth(const std::function<double(double)>& f, double edge,
                        int dir, const ScanOptions& o) {
  double prev = scan_eval(f, edge);
  if (std::isinf(prev)) return true;
  for (int j = 1; j <= o.divergence_decades; ++j) {
    double t = edge * std::pow(10.0, dir * j);
    double v = scan_eval(f, t);
    if (std::isinf(v)) return true;
    if (!(v >= o.divergence_factor * prev) || v <= 0.0) return false;
    prev = v;
  }
  return true;
}

}  // namespace detail

// Maximize f over the open interval (a, b), 0 <= a < b <= inf.
inline ScanResult maximize_scan(const std::function<double(double)>& f,
                                double a, double b, ScanOptions opt = {}) {
  if (std::isnan(a) || std::isnan(b) || a < 0.0 || a > b)
    throw std::invalid_argument("maximize_scan: need 0 <= a <= b");
  if (a == b) return {a, ExtendedValue(0.0)};

  double lo = (a > 0.0) ? a : opt.window_lo;
  double hi = (b < kInf) ? b : opt.window_hi;
  if (lo >= hi) {
    // The default window misses the interval; rebuild one inside (a,b).
    if (b < kInf && a == 0.0) { hi = b; lo = b * 1e-12; }
    else if (a > 0.0 && b == kInf) { lo = a; hi = a * 1e12; }
    else { lo = a; hi = b; }
  }

  const int n = std::max(opt.grid, 8);
  const double la = std::log(lo), lb = std::log(hi);
  double best_t = std::sqrt(lo * hi);
  double best_v = -1.0;
  int best_k = -1;
  for (int k = 0; k < n; ++k) {
    double t = std::exp(la + (lb - la) * (k + 0.5) / n);
    double v = detail::scan_eval(f, t);
    if (std::isinf(v)) return {t, ExtendedValue::infinity()};
    if (v > best_v) { best_v = v; best_t = t; best_k = k; }
  }

  if (b == kInf && detail::scan_growth(f, hi, +1, opt))
    return {hi, ExtendedValue::infinity()};
  if (a == 0.0 && detail::scan_growth(f, lo, -1, opt))
    return {lo, ExtendedValue::infinity()};

  // Golden-section refinement between the neighbors of the best sample.
  if (best_k >= 0) {
    double yl = la + (lb - la) * std::max(best_k - 0.5, 0.0) / n;
    double yr = la + (lb - la) * std::min(best_k + 1.5, double(n)) / n;
    const double invphi = 0.6180339887498949;
    double y1 = yr - invphi * (yr - yl);
    double y2 = yl + invphi * (yr - yl);
    double f1 = detail::scan_eval(f, std::exp(y1));
    double f2 = detail::scan_eval(f, std::exp(y2));
    for (int it = 0; it < 120 && (yr - yl) > opt.log_width_tol; ++it) {
      if (f1 < f2) {
        yl = y1; y1 = y2; f1 = f2;
        y2 = yl + invphi * (yr - yl);
        f2 = detail::scan_eval(f, std::exp(y2));
      } else {
        yr = y2; y2 = y1; f2 = f1;
        y1 = yr - invphi * (yr - yl);
        f1 = detail::scan_eval(f, std::exp(y1));
      }
      if (std::isinf(f1)) return {std::exp(y1), ExtendedValue::infinity()};
      if (std::isinf(f2)) return {std::exp(y2), ExtendedValue::infinity()};
    }
    double yc = 0.5 * (yl + yr), tc = std::exp(yc);
    double vc = detail::scan_eval(f, tc);
    if (std::isinf(vc)) return {tc, ExtendedValue::infinity()};
    if (vc > best_v) { best_v = vc; best_t = tc; }
  }

  if (best_v < 0.0) best_v = 0.0;
  return {best_t, ExtendedValue(best_v)};
}

}  // namespace cesembed
