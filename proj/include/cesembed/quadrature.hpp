#pragma once

// Quadrature kernels for the half-line (0, inf):
//
//  * integrate_gk / integrate_ts — thin wrappers over Boost.Math adaptive
//    Gauss-Kronrod and tanh-sinh rules with a sanitizing callable guard.
//  * integrate_log — integrates f over (a,b) ⊂ (0,inf) through the
//    substitution t = e^y, which turns every power-law/exponential tail that
//    converges into an exponentially decaying integrand on the y-axis.
//  * decade-growth divergence heuristics for endpoints where no closed-form
//    exponent analysis is available.
//  * CumulativeFunction — a per-function cumulative table on a geometric
//    grid with block-partial sums, giving O(1)-bounded, cancellation-free
//    ∫_a^b, ∫_0^b and ∫_a^inf queries after construction.  This is the cache
//    behind weight tails and the nested-functional inner primitives.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cesembed/extended_value.hpp"

namespace cesembed {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadOptions {
  double rel_tol = 1e-9;   // target relative accuracy
  unsigned max_depth = 15; // adaptive bisection depth
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// Per-thread diagnostic counters (non-evaluable points, clamps, pieces that
// failed to reach tolerance, log-product 0*inf conflicts).  Reset before a
// computation and snapshot after; reporting is the caller's business.
struct DiagCounters {
  std::uint64_t non_evaluable = 0;
  std::uint64_t clamped_infinite = 0;
  std::uint64_t nonconverged_pieces = 0;
  std::uint64_t log_conflicts = 0;
};

inline DiagCounters& diag_counters() {
  thread_local DiagCounters counters;
  return counters;
}

inline void reset_diag_counters() { diag_counters() = DiagCounters{}; }

namespace detail {

// Guard a user integrand: NaN counts as non-evaluable and contributes 0;
// +inf is clamped to a huge finite value so the adaptive rules keep working
// and the divergence logic upstream can classify the result.
template <class F>
auto sanitized(F&& f) {
  return [g = std::forward<F>(f)](double t) -> double {
    double y = g(t);
    if (std::isnan(y)) {
      ++diag_counters().non_evaluable;
      return 0.0;
    }
    if (std::isinf(y)) {
      ++diag_counters().clamped_infinite;
      return 1e300;
    }
    return y;
  };
}

}  // namespace detail

// Adaptive Gauss-Kronrod (G7,K15) on [a,b]; either endpoint may be infinite.
template <class F>
QuadResult integrate_gk(F&& f, double a, double b, QuadOptions opt = {}) {
  using boost::math::quadrature::gauss_kronrod;
  if (a == b) return {0.0, 0.0, true};
  // Boost's acceptance test compares the raw [-1,1] error estimate (roundoff
  // floor ~4eps) against tol times the width-scaled integral, so on intervals
  // of half-width below ~1e-15/tol it can never pass and bisects to full
  // depth for nothing.  Lift the tolerance just enough to keep the test
  // satisfiable; K15 is already at machine accuracy on such narrow pieces.
  double tol = opt.rel_tol;
  if (std::isfinite(a) && std::isfinite(b)) {
    double half_width = std::abs(b - a) / 2;
    constexpr double kRoundoffFloor = 64 * std::numeric_limits<double>::epsilon();
    if (half_width > 0.0 && half_width < 1.0)
      tol = std::min(0.1, std::max(tol, kRoundoffFloor / half_width));
  }
  double error = 0.0, l1 = 0.0;
  double value = gauss_kronrod<double, 15>::integrate(
      detail::sanitized(std::forward<F>(f)), a, b, opt.max_depth, tol,
      &error, &l1);
  double scale = std::max({std::abs(value), l1, 1e-300});
  bool converged = std::isfinite(value) && error <= 10 * tol * scale;
  if (!converged) ++diag_counters().nonconverged_pieces;
  return {value, error, converged};
}

// tanh-sinh backup for finite intervals with endpoint singularities.
// The interval is reparametrized onto [-0.4, 0.4]: Boost's node transform only
// takes its collision-free (complement-based) endpoint path when both bounds
// have magnitude < 0.5; with larger bounds deep refinement rounds nodes onto
// the endpoints and trips an internal assertion.
template <class F>
QuadResult integrate_ts(F&& f, double a, double b, QuadOptions opt = {}) {
  if (a == b) return {0.0, 0.0, true};
  // Slivers (width below endpoint roundoff) carry negligible mass; leave them
  // to the caller's GK estimate.
  double span_scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (!((b - a) > 1e-10 * span_scale)) return {0.0, kInf, false};
  const double zlo = -0.4, zhi = 0.4;
  const double stretch = (b - a) / (zhi - zlo);
  auto remapped = [&](double z) { return f(a + (z - zlo) * stretch) * stretch; };
  boost::math::quadrature::tanh_sinh<double> rule(15);
  double error = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  double value = 0.0;
  try {
    value = rule.integrate(detail::sanitized(remapped), zlo, zhi,
                           opt.rel_tol, &error, &l1, &levels);
  } catch (const std::exception&) {
    ++diag_counters().nonconverged_pieces;
    return {0.0, kInf, false};
  }
  double scale = std::max({std::abs(value), l1, 1e-300});
  bool converged = std::isfinite(value) && error <= 10 * opt.rel_tol * scale;
  if (!converged) ++diag_counters().nonconverged_pieces;
  return {value, error, converged};
}

// ∫_a^b f(t) dt over (a,b) ⊆ (0,inf) via t = e^y.  a == 0 and b == inf are
// allowed; convergent endpoint behavior becomes exponential decay in y.
template <class F>
QuadResult integrate_log(F&& f, double a, double b, QuadOptions opt = {}) {
  if (a == b) return {0.0, 0.0, true};
  double ya = (a == 0.0) ? -kInf : std::log(a);
  double yb = (b == kInf) ? kInf : std::log(b);
  auto g = [&](double y) {
    double t = std::exp(y);
    // Infinite-interval node transforms can probe y far beyond the range where
    // e^y is representable; those regions carry no recoverable mass.
    if (t == 0.0 || !std::isfinite(t)) return 0.0;
    return f(t) * t;
  };
  QuadResult r = integrate_gk(g, ya, yb, opt);
  if (!r.converged && std::isfinite(ya) && std::isfinite(yb)) {
    QuadResult ts = integrate_ts(g, ya, yb, opt);
    if (ts.converged) return ts;
  }
  return r;
}

// --- decade-mass divergence heuristics ---------------------------------------
//
// For integrands without closed-form exponent information, divergence toward
// an open endpoint is decided from the per-decade mass m_d = ∫_decade f,
// estimated by a fixed log-composite sample.  ∫ converges iff Σ m_d does; for
// the power/exponential-dominated integrands handled here the masses are
// asymptotically geometric, so the test is the median decade-to-decade ratio:
// ratios >= decay_threshold (default 0.95, which catches the critical 1/t
// case with ratio 1) classify as divergent, and any infinite probe does too.
// Exponents within ~0.02 of critical are beyond the heuristic's resolution —
// owners with exact exponent knowledge pass hints instead.

struct MassHeuristicOptions {
  double start = 1e12;       // first probed decade boundary beyond the window
  int decades = 5;           // decades examined
  double decay_threshold = 0.95;
  int probes_per_decade = 4;
  double floor = 1e-280;     // masses below this are treated as vanished
};

namespace detail {

template <class F>
bool decade_masses_diverge(F&& f, double start, int dir, const MassHeuristicOptions& o) {
  std::vector<double> mass;
  mass.reserve(o.decades);
  for (int d = 0; d < o.decades; ++d) {
    double edge = start * std::pow(10.0, dir * d);
    double m = 0.0;
    for (int k = 0; k < o.probes_per_decade; ++k) {
      double t = edge * std::pow(10.0, dir * (k + 0.5) / o.probes_per_decade);
      double y = f(t);
      if (std::isnan(y)) y = 0.0;
      if (std::isinf(y)) return true;
      m += y * t;  // log-axis mass density
    }
    mass.push_back(m / o.probes_per_decade * std::log(10.0));
  }
  std::vector<double> ratio;
  for (std::size_t d = 1; d < mass.size(); ++d) {
    if (mass[d - 1] <= o.floor) return false;  // already vanished: convergent
    ratio.push_back(mass[d] / mass[d - 1]);
  }
  if (ratio.empty()) return false;
  std::nth_element(ratio.begin(), ratio.begin() + ratio.size() / 2, ratio.end());
  return ratio[ratio.size() / 2] >= o.decay_threshold;
}

}  // namespace detail

template <class F>
bool integral_grows_toward_inf(F&& f, MassHeuristicOptions o = {}) {
  return detail::decade_masses_diverge(std::forward<F>(f), o.start, +1, o);
}

template <class F>
bool integral_grows_toward_zero(F&& f, MassHeuristicOptions o = {}) {
  double start = (o.start > 1.0) ? 1.0 / o.start : o.start;  // mirror default
  return detail::decade_masses_diverge(std::forward<F>(f), start, -1, o);
}

// --- cumulative tables ------------------------------------------------------

// Divergence knowledge for the two off-grid pieces.  nullopt means "decide
// with the growth heuristic"; owners with exact exponent analysis (analytic
// weights) pass explicit values.
struct EndpointHints {
  std::optional<bool> diverges_at_zero;
  std::optional<bool> diverges_at_inf;
};

class CumulativeFunction {
 public:
  static constexpr double kGridLo = 1e-12;
  static constexpr double kGridHi = 1e12;
  static constexpr int kCellsPerDecade = 42;
  static constexpr std::size_t kBlock = 32;

  CumulativeFunction(std::function<double(double)> f,
                     std::vector<double> anchors = {},
                     EndpointHints hints = {}, QuadOptions opt = {})
      : f_(std::move(f)), opt_(opt) {
    build_grid(anchors);
    build_cells();
    resolve_heads(hints);
  }

  const std::vector<double>& grid() const { return grid_; }

  // General entry: 0 ≤ a ≤ b ≤ inf.
  ExtendedValue integrate(double a, double b) const {
    if (std::isnan(a) || std::isnan(b) || a < 0.0 || a > b)
      throw std::invalid_argument("CumulativeFunction::integrate: need 0 <= a <= b");
    if (a == b) return 0.0;
    if (a == 0.0 && b == kInf) return total();
    if (a == 0.0) return from_zero(b);
    if (b == kInf) return tail(a);
    return between(a, b);
  }

  ExtendedValue from_zero(double b) const {
    if (b <= grid_.front()) {
      if (head_divergent_) return ExtendedValue::infinity();
      // Everything below the grid: integrate directly.
      return clamp_nonneg(integrate_log(f_, 0.0, b, opt_).value);
    }
    if (head_divergent_) return ExtendedValue::infinity();
    return ExtendedValue(head_) + between(grid_.front(), std::min(b, grid_.back())) +
           (b > grid_.back() ? between_above(grid_.back(), b) : ExtendedValue(0.0));
  }

  ExtendedValue tail(double a) const {
    if (a >= grid_.back()) {
      if (tail_divergent_) return ExtendedValue::infinity();
      return clamp_nonneg(integrate_log(f_, a, kInf, opt_).value);
    }
    if (tail_divergent_) return ExtendedValue::infinity();
    return (a < grid_.front() ? between_below(a, grid_.front()) : ExtendedValue(0.0)) +
           between(std::max(a, grid_.front()), grid_.back()) + ExtendedValue(tail_beyond_);
  }

  ExtendedValue total() const {
    if (head_divergent_ || tail_divergent_) return ExtendedValue::infinity();
    return ExtendedValue(head_) + between(grid_.front(), grid_.back()) +
           ExtendedValue(tail_beyond_);
  }

  // ∫_a^b for finite 0 < a ≤ b; pieces outside the grid integrate directly.
  ExtendedValue between(double a, double b) const {
    if (a == b) return 0.0;
    ExtendedValue acc = 0.0;
    if (a < grid_.front()) {
      acc = acc + between_below(a, std::min(b, grid_.front()));
      a = grid_.front();
      if (b <= a) return acc;
    }
    if (b > grid_.back()) {
      if (a < grid_.back()) {
        acc = acc + between_above(grid_.back(), b);
        b = grid_.back();
      } else {
        return acc + between_above(a, b);
      }
    }
    // Now grid_.front() ≤ a ≤ b ≤ grid_.back().
    std::size_t i = cell_index(a);
    std::size_t j = cell_index(b);
    if (i == j) return acc + partial(a, b);
    acc = acc + partial(a, grid_[i + 1]);
    acc = acc + sum_cells(i + 1, j);
    acc = acc + partial(grid_[j], b);
    return acc;
  }

 private:
  static ExtendedValue clamp_nonneg(double v) {
    if (std::isnan(v)) return 0.0;
    return ExtendedValue(std::max(v, 0.0));
  }

  void build_grid(const std::vector<double>& anchors) {
    const double lo = std::log10(kGridLo), hi = std::log10(kGridHi);
    const int n = static_cast<int>((hi - lo) * kCellsPerDecade);
    grid_.reserve(n + 1 + anchors.size());
    for (int k = 0; k <= n; ++k)
      grid_.push_back(std::pow(10.0, lo + (hi - lo) * k / n));
    for (double a : anchors)
      if (std::isfinite(a) && a > 0.0) grid_.push_back(a);
    std::sort(grid_.begin(), grid_.end());
    grid_.erase(std::unique(grid_.begin(), grid_.end(),
                            [](double x, double y) {
                              return std::abs(x - y) <= 1e-15 * std::max(x, y);
                            }),
                grid_.end());
  }

  void build_cells() {
    const std::size_t m = grid_.size() - 1;
    cells_.resize(m);
    QuadOptions cell_opt{1e-12, 10};
    bool any_inf = false;
    for (std::size_t i = 0; i < m; ++i) {
      QuadResult r = integrate_gk(f_, grid_[i], grid_[i + 1], cell_opt);
      double v = r.value;
      if (!r.converged) {
        QuadResult ts = integrate_ts(f_, grid_[i], grid_[i + 1], cell_opt);
        if (ts.converged) v = ts.value;
      }
      // A clamped-infinite integrand (value 1e300) signals a cell where the
      // function is genuinely infinite on a set of positive measure.
      if (!std::isfinite(v) || v >= 1e250) {
        cells_[i] = kInf;
        any_inf = true;
      } else {
        cells_[i] = std::max(v, 0.0);
      }
    }
    has_inf_cells_ = any_inf;
    const std::size_t nb = (m + kBlock - 1) / kBlock;
    block_sum_.assign(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      double s = 0.0;
      for (std::size_t i = b * kBlock; i < std::min(m, (b + 1) * kBlock); ++i)
        s += cells_[i];
      block_sum_[b] = s;  // inf cells poison their block sum, handled below
    }
  }

  void resolve_heads(const EndpointHints& hints) {
    MassHeuristicOptions low_opt;
    low_opt.start = grid_.front();
    head_divergent_ = hints.diverges_at_zero.has_value()
                          ? *hints.diverges_at_zero
                          : integral_grows_toward_zero(f_, low_opt);
    if (head_divergent_) {
      head_ = kInf;
    } else {
      QuadResult r = integrate_log(f_, 0.0, grid_.front(), opt_);
      head_ = std::max(r.value, 0.0);
      if (!r.converged && r.value > 1e250) head_ = kInf, head_divergent_ = true;
    }
    MassHeuristicOptions high_opt;
    high_opt.start = grid_.back();
    tail_divergent_ = hints.diverges_at_inf.has_value()
                          ? *hints.diverges_at_inf
                          : integral_grows_toward_inf(f_, high_opt);
    if (tail_divergent_) {
      tail_beyond_ = kInf;
    } else {
      QuadResult r = integrate_log(f_, grid_.back(), kInf, opt_);
      tail_beyond_ = std::max(r.value, 0.0);
      if (!r.converged && r.value > 1e250) tail_beyond_ = kInf, tail_divergent_ = true;
    }
  }

  std::size_t cell_index(double t) const {
    // Largest i with grid_[i] ≤ t, clamped to a valid cell.
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin());
    if (i == 0) return 0;
    i -= 1;
    return std::min(i, grid_.size() - 2);
  }

  // Sum of full cells [i, j); cancellation-free (non-negative terms only).
  ExtendedValue sum_cells(std::size_t i, std::size_t j) const {
    if (i >= j) return 0.0;
    if (has_inf_cells_) {
      double s = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        if (std::isinf(cells_[k])) return ExtendedValue::infinity();
        s += cells_[k];
      }
      return s;
    }
    double s = 0.0;
    std::size_t bi = i / kBlock, bj = j / kBlock;
    if (bi == bj) {
      for (std::size_t k = i; k < j; ++k) s += cells_[k];
      return s;
    }
    for (std::size_t k = i; k < (bi + 1) * kBlock; ++k) s += cells_[k];
    for (std::size_t b = bi + 1; b < bj; ++b) s += block_sum_[b];
    for (std::size_t k = bj * kBlock; k < j; ++k) s += cells_[k];
    return s;
  }

  // Integral over a sub-interval of one cell.
  ExtendedValue partial(double a, double b) const {
    if (a >= b) return 0.0;
    QuadResult r = integrate_gk(f_, a, b, QuadOptions{1e-11, 8});
    if (!std::isfinite(r.value) || r.value >= 1e250) return ExtendedValue::infinity();
    return clamp_nonneg(r.value);
  }

  ExtendedValue between_below(double a, double b) const {
    QuadResult r = integrate_log(f_, a, b, opt_);
    return clamp_nonneg(r.value);
  }

  ExtendedValue between_above(double a, double b) const {
    QuadResult r = integrate_log(f_, a, b, opt_);
    return clamp_nonneg(r.value);
  }

  std::function<double(double)> f_;
  QuadOptions opt_;
  std::vector<double> grid_;
  std::vector<double> cells_;
  std::vector<double> block_sum_;
  bool has_inf_cells_ = false;
  bool head_divergent_ = false;
  bool tail_divergent_ = false;
  double head_ = 0.0;
  double tail_beyond_ = 0.0;
};

// Integrate a non-negative integrand over (lo, hi) ⊆ (0, inf): divergence at
// an open endpoint (0 or inf) is decided by the decade-mass heuristics, then
// the range is split at the anchors and each piece integrated through the
// log substitution.  Pieces that blow past double range report infinity.
inline ExtendedValue improper_integral(const std::function<double(double)>& f,
                                       std::vector<double> anchors = {},
                                       QuadOptions opt = {}, double lo = 0.0,
                                       double hi = kInf) {
  if (std::isnan(lo) || std::isnan(hi) || lo < 0.0 || lo > hi)
    throw std::invalid_argument("improper_integral: need 0 <= lo <= hi");
  if (lo == hi) return 0.0;
  // Heuristic probes must stay inside (lo, hi): a finite far endpoint caps the
  // probe range so the integrand is never evaluated outside its domain.
  if (hi == kInf) {
    MassHeuristicOptions mh;
    mh.start = std::max(mh.start, lo * 10.0);
    if (integral_grows_toward_inf(f, mh)) return ExtendedValue::infinity();
  }
  if (lo == 0.0) {
    MassHeuristicOptions mh;
    double zstart = (mh.start > 1.0) ? 1.0 / mh.start : mh.start;
    mh.start = std::min(zstart, (hi == kInf) ? zstart : hi / 10.0);
    if (integral_grows_toward_zero(f, mh)) return ExtendedValue::infinity();
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::remove_if(anchors.begin(), anchors.end(),
                               [&](double a) { return !(a > lo) || a >= hi; }),
                anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  double total = 0.0;
  double at = lo;
  auto add_piece = [&](double a, double b) -> bool {
    QuadResult r = integrate_log(f, a, b, opt);
    if (!std::isfinite(r.value) || r.value >= 1e250) return false;
    total += std::max(r.value, 0.0);
    return true;
  };
  for (double a : anchors) {
    if (!add_piece(at, a)) return ExtendedValue::infinity();
    at = a;
  }
  if (!add_piece(at, hi)) return ExtendedValue::infinity();
  return total;
}

// --- log-domain products -----------------------------------------------------
//
// The nested functionals multiply factors whose individual magnitudes can
// overflow double range even when the product is moderate.  LogProduct
// accumulates exponent*log(factor) exactly; exact zeros and infinities are
// tracked as states.  A 0 * inf conflict resolves to 0 (the sound direction
// for lower bounds and for decayed tails) and bumps a diagnostic counter.
class LogProduct {
 public:
  void mul_pow(double base, double expo) {
    if (expo == 0.0) return;
    if (std::isnan(base)) {
      ++diag_counters().non_evaluable;
      set_zero();
      return;
    }
    if (base == 0.0) {
      if (expo > 0.0) set_zero(); else set_inf();
      return;
    }
    if (std::isinf(base)) {
      if (expo > 0.0) set_inf(); else set_zero();
      return;
    }
    lg_ += expo * std::log(base);
  }

  void mul_value(double v) { mul_pow(v, 1.0); }

  bool is_zero() const { return zero_ && !inf_; }
  bool is_inf() const { return inf_ && !zero_; }

  // Saturating linear value; conflicts resolve to 0 with a counter bump.
  double value() const {
    if (zero_ && inf_) {
      ++diag_counters().log_conflicts;
      return 0.0;
    }
    if (zero_) return 0.0;
    if (inf_) return kInf;
    if (lg_ > 709.0) return kInf;
    if (lg_ < -745.0) return 0.0;
    return std::exp(lg_);
  }

  double log_value() const {
    if (zero_ && inf_) {
      ++diag_counters().log_conflicts;
      return -kInf;
    }
    if (zero_) return -kInf;
    if (inf_) return kInf;
    return lg_;
  }

 private:
  void set_zero() { zero_ = true; }
  void set_inf() { inf_ = true; }
  double lg_ = 0.0;
  bool zero_ = false;
  bool inf_ = false;
};

}  // namespace cesembed
