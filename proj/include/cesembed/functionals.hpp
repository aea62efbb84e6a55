#pragma once

// The fourteen characterizing functionals of the reduced embedding
// inequality, the hypotheses under which each regime's characterization is
// valid, and their case-wise combination into the equivalent best constant.
//
// For parameters in a theorem regime (see classify in parameters.hpp) the
// best constant C in
//
//   ( ∫_0^∞ ( ∫_0^t f^p v )^{q/p} u(t) dt )^{1/q}
//       <=  C · ( ∫_0^∞ ( ∫_0^t f )^θ w(t) dt )^{1/θ}
//
// is two-sidedly comparable to the sum of the functionals listed in
// formula_set(regime).  The functionals are evaluated verbatim from their
// defining displays with the weight-model primitives: cached cumulative
// tables for one-variable integrals, adaptive improper integrals over outer
// variables, and deterministic sup scans for suprema.  Throughout,
//
//   V := v^{1/(1-p)},   U(t) := ∫_t^∞ u,   Wtail(s) := ∫_s^∞ w.
//
// Any index is evaluable for any positive parameters as a diagnostic —
// whether it belongs to the problem's regime is visible through
// formula_set(classify(params)) — except where an exponent degenerates
// (division by zero inside an exponent), which raises
// UnsupportedRegimeError rather than returning a silent number.

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cesembed/errors.hpp"
#include "cesembed/extended_value.hpp"
#include "cesembed/parameters.hpp"
#include "cesembed/problem.hpp"
#include "cesembed/quadrature.hpp"
#include "cesembed/scan.hpp"
#include "cesembed/weight.hpp"

namespace cesembed {

struct FunctionalOptions {
  // A_7's inner supremum uses the exponent θ(1-p)/(θ-p) on ∫_t^z V as
  // stated; an alternative derivation carries θ(q-p)/(θ-p) there.  The flag
  // switches to the variant for diagnostics; values differ in general.
  bool a7_alternate_exponent = false;
};

// ---------------------------------------------------------------------------
// Admissibility hypotheses
// ---------------------------------------------------------------------------

struct AdmissibilityEntry {
  std::string condition;          // the hypothesis, in formula shorthand
  bool pass = true;
  bool endpoint_degenerate = false;  // vanishes as t → 0 but holds at each t
  double witness_t = 0.0;         // first failing grid point when !pass
  double witness_value = 0.0;     // offending value there (0 or inf)
  std::string note;
};

struct AdmissibilityReport {
  Regime regime = Regime::Unsupported_other;
  std::vector<AdmissibilityEntry> entries;
  std::vector<std::string> warnings;
  bool all_pass = true;
};

namespace detail {

// Hypotheses quantified over all t are spot-checked on a fixed geometric
// grid spanning the representable window; failures record the first bad t.
inline const std::vector<double>& admissibility_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(64);
    for (int i = 0; i < 64; ++i) g[i] = 1e-6 * std::pow(1e12, i / 63.0);
    return g;
  }();
  return grid;
}

inline std::vector<double> merged_anchors(std::initializer_list<const Weight*> ws) {
  std::vector<double> out;
  for (const Weight* w : ws)
    for (double t : w->anchors())
      if (t > 0.0 && std::isfinite(t)) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Check 0 < value(t) < ∞ on the grid.  A vanishing prefix followed by
// positive values is the t→0 endpoint degeneracy: the displayed hypothesis
// concerns each positive t, so this warns instead of failing.
inline AdmissibilityEntry positivity_entry(const std::string& condition,
                                           const std::function<ExtendedValue(double)>& value,
                                           std::vector<std::string>& warnings) {
  AdmissibilityEntry e;
  e.condition = condition;
  const auto& grid = admissibility_grid();
  std::size_t zero_prefix = 0;
  bool in_prefix = true;
  for (double t : grid) {
    ExtendedValue x = value(t);
    if (x.is_infinite()) {
      e.pass = false;
      e.witness_t = t;
      e.witness_value = kInf;
      e.note = "infinite value";
      return e;
    }
    if (x.value() <= 0.0) {
      if (in_prefix) {
        ++zero_prefix;
        continue;
      }
      e.pass = false;
      e.witness_t = t;
      e.witness_value = 0.0;
      e.note = "vanishes at an interior grid point";
      return e;
    }
    in_prefix = false;
  }
  if (zero_prefix == grid.size()) {
    e.pass = false;
    e.witness_t = grid.front();
    e.witness_value = 0.0;
    e.note = "vanishes on the whole grid";
    return e;
  }
  if (zero_prefix > 0) {
    e.endpoint_degenerate = true;
    e.witness_t = grid[zero_prefix - 1];
    e.note = "vanishes as t -> 0 (endpoint degeneracy); positive at larger t";
    warnings.push_back(condition + ": " + e.note);
  }
  return e;
}

inline AdmissibilityEntry finiteness_entry(const std::string& condition,
                                           const std::function<ExtendedValue(double)>& value) {
  AdmissibilityEntry e;
  e.condition = condition;
  for (double t : admissibility_grid()) {
    ExtendedValue x = value(t);
    if (x.is_infinite()) {
      e.pass = false;
      e.witness_t = t;
      e.witness_value = kInf;
      e.note = "infinite value";
      return e;
    }
  }
  return e;
}

// Structural continuity check: analytic weights can only jump at interior
// breakpoints; tabulated weights interpolate linearly and are continuous.
inline AdmissibilityEntry continuity_entry(const Weight& v, const std::string& name) {
  AdmissibilityEntry e;
  e.condition = name + " continuous";
  if (v.kind() == Weight::Kind::Tabulated) {
    e.note = "piecewise-linear interpolant; continuous by construction";
    return e;
  }
  for (double a : v.anchors()) {
    if (!(a > 0.0) || !std::isfinite(a)) continue;
    double lo = v(a * (1.0 - 1e-9));
    double hi = v(a * (1.0 + 1e-9));
    double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    if (std::abs(hi - lo) > 1e-6 * scale) {
      e.pass = false;
      e.witness_t = a;
      e.witness_value = hi - lo;
      e.note = "jump across an interior breakpoint";
      return e;
    }
  }
  return e;
}

// True when w carries positive mass on (s, ∞) as a mathematical fact, even
// where ∫_s^∞ w underflows to zero numerically (e.g. e^{-s} beyond s ≈ 745).
inline bool has_mass_beyond(const Weight& w, double s) {
  if (w.kind() == Weight::Kind::Analytic) {
    for (const auto& seg : w.segments())
      if (seg.to > s && seg.c > 0.0) return true;
    return false;
  }
  const auto& ts = w.sample_points();
  const auto& ys = w.sample_values();
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] > s && ys[i] > 0.0) return true;
  // Beyond the last sample the table extrapolates by a power law, which stays
  // positive exactly when the boundary value is.
  return !ys.empty() && ys.back() > 0.0;
}

// w's tail mass at s, for use under a negative exponent: a tail that is
// positive in exact arithmetic but below the smallest double reads as 0, and
// the negative power would inflate the underflow into a spurious +inf.  Such
// points come back NaN — scans skip them and quadrature drops them as
// non-evaluable (both counted in the diagnostics).  A genuine zero tail (w
// supported on a bounded set) keeps its honest 0^{negative} = ∞.
inline double tail_or_nan(const Weight& w, double s) {
  double tail = w.tail(s).value();
  if (tail == 0.0 && has_mass_beyond(w, s)) return std::nan("");
  return tail;
}

// ∫_0^t (∫_s^t V)^{e_v} Wtail(s)^{e_w} w(s) ds — the layered head integral
// shared by A_5, A_7 and the positivity hypothesis of the p < min{1,q,θ}
// regimes.
inline ExtendedValue layered_head_integral(const Weight& V, const Weight& w, double e_v,
                                           double e_w, double t,
                                           const std::vector<double>& anchors,
                                           const QuadOptions& opt = {}) {
  auto g = [&](double s) {
    double wt = tail_or_nan(w, s);
    if (std::isnan(wt)) return wt;
    LogProduct lp;
    lp.mul_pow(V.between(s, t).value(), e_v);
    lp.mul_pow(wt, e_w);
    lp.mul_value(w(s));
    return lp.value();
  };
  return improper_integral(g, anchors, opt, 0.0, t);
}

}  // namespace detail

inline AdmissibilityReport check_admissibility(const ReducedProblem& prob) {
  AdmissibilityReport rep;
  rep.regime = classify(prob.params);
  if (!is_theorem_regime(rep.regime)) {
    rep.warnings.push_back(std::string("no theorem hypotheses apply to regime ") +
                           to_string(rep.regime));
    return rep;
  }
  const double p = prob.params.p.value;
  const double q = prob.params.q.value;
  const double th = prob.params.theta.value;
  const Weight& u = prob.u;
  const Weight& v = prob.v;
  const Weight& w = prob.w;

  // Common to every regime: the w-tail must be finite at each t.
  rep.entries.push_back(
      detail::finiteness_entry("int_t^inf w < inf", [&](double t) { return w.tail(t); }));

  switch (rep.regime) {
    case Regime::T3a:
    case Regime::T3b:
    case Regime::T3c:
    case Regime::T3d: {
      // 0 < ∫_0^t (∫_s^t V)^{θ(1-p)/(θ-p)} Wtail(s)^{-θ/(θ-p)} w(s) ds < ∞.
      const double e_v = th * (1.0 - p) / (th - p);
      const double e_w = -th / (th - p);
      Weight V = v.power(1.0 / (1.0 - p));
      std::vector<double> anch = detail::merged_anchors({&v, &w});
      rep.entries.push_back(detail::positivity_entry(
          "0 < int_0^t (int_s^t V)^{th(1-p)/(th-p)} (int_s^inf w)^{-th/(th-p)} w(s) ds < inf",
          [&](double t) { return detail::layered_head_integral(V, w, e_v, e_w, t, anch); },
          rep.warnings));
      break;
    }
    case Regime::T4a:
    case Regime::T4b: {
      rep.entries.push_back(detail::continuity_entry(v, "v"));
      const double thp = th / (th - 1.0);
      Weight vpow = v.power(thp);
      rep.entries.push_back(detail::positivity_entry(
          "0 < int_0^t v^{th/(th-1)} < inf",
          [&](double t) { return vpow.from_zero(t); }, rep.warnings));
      auto lam_f = [&](double x) {
        double wt = detail::tail_or_nan(w, x);
        if (std::isnan(wt)) return wt;
        LogProduct lp;
        lp.mul_pow(wt, -thp);
        lp.mul_value(w(x));
        return lp.value();
      };
      CumulativeFunction lam(lam_f, detail::merged_anchors({&w}));
      rep.entries.push_back(detail::positivity_entry(
          "0 < int_0^t (int_x^inf w)^{-th/(th-1)} w(x) dx < inf",
          [&](double t) { return lam.from_zero(t); }, rep.warnings));
      Weight upow = u.power(-1.0 / (q - 1.0));
      rep.entries.push_back(detail::positivity_entry(
          "0 < int_0^t u^{-1/(q-1)} < inf",
          [&](double t) { return upow.from_zero(t); }, rep.warnings));
      break;
    }
    default:
      break;  // T1a/T1b/T2: only the tail condition.
  }

  for (const auto& e : rep.entries)
    if (!e.pass) rep.all_pass = false;
  return rep;
}

// ---------------------------------------------------------------------------
// The functionals A_1 .. A_14
// ---------------------------------------------------------------------------

namespace detail {

// Inner suprema evaluated inside scans or quadrature nodes use a lighter
// grid; golden-section refinement restores local accuracy.
inline ScanOptions inner_sup_options() {
  ScanOptions o;
  o.grid = 128;
  return o;
}

// Outer integrands that contain a scanned supremum carry ~1e-9 evaluation
// noise; a looser tolerance stops the adaptive quadrature from chasing it.
inline QuadOptions sup_integrand_options() {
  QuadOptions o;
  o.rel_tol = 1e-7;
  return o;
}

// Inner integrals evaluated per node of an outer scan or quadrature.  The
// outer stage resolves 1e-7 at best, so resolving the inner one much past
// that only multiplies cost.
inline QuadOptions inner_integral_options() {
  QuadOptions o;
  o.rel_tol = 1e-8;
  o.max_depth = 12;
  return o;
}

// Outer suprema whose objective evaluates an adaptive integral per point:
// such objectives are integrals of the scanned endpoint and hence smooth, so
// a coarser primary grid plus golden-section refinement loses no accuracy
// while keeping the total integral count proportionate.
inline ScanOptions integral_objective_sup_options() {
  ScanOptions o;
  o.grid = 256;
  return o;
}

// Pointwise suprema of expressions involving a weight's own values can sit
// on narrow segments or jump past breakpoints that a geometric grid misses;
// the weight's breakpoints (and their midpoints) join the scan as explicit
// candidates.
inline double sup_with_weight_candidates(const std::function<double(double)>& f, double a,
                                         double b, const Weight& wt,
                                         const ScanOptions& opt = {}) {
  ScanResult r = maximize_scan(f, a, b, opt);
  if (r.value.is_infinite()) return kInf;
  double best = r.value.value();
  auto consider = [&](double t) {
    if (!(t > a) || !(t < b) || !std::isfinite(t)) return;
    double y = f(t);
    if (std::isnan(y)) {
      ++diag_counters().non_evaluable;
      return;
    }
    best = std::max(best, y);
  };
  std::vector<double> pts;
  for (double t : wt.anchors())
    if (t > 0.0 && std::isfinite(t)) pts.push_back(t);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    consider(pts[i] * (1.0 - 1e-9));
    consider(pts[i] * (1.0 + 1e-9));
    if (i + 1 < pts.size()) consider(std::sqrt(pts[i] * pts[i + 1]));
  }
  return best;
}

struct FunctionalContext {
  const ReducedProblem& prob;
  double p, q, th;
  mutable std::optional<Weight> V_;

  explicit FunctionalContext(const ReducedProblem& pr)
      : prob(pr),
        p(pr.params.p.value),
        q(pr.params.q.value),
        th(pr.params.theta.value) {}

  const Weight& V() const {
    if (!V_) V_ = prob.v.power(1.0 / (1.0 - p));
    return *V_;
  }
  double U(double t) const { return prob.u.tail(t).value(); }
  double Wtail(double s) const { return prob.w.tail(s).value(); }
  // Wtail for use under the negative exponents of the A-functionals; see
  // tail_or_nan above for the underflow contract.
  double Wtail_or_nan(double s) const { return tail_or_nan(prob.w, s); }
};

// A_1 = sup_x Wtail(x)^{-1/θ} · sup_{t>x} (∫_x^t V)^{(1-p)/p} U(t)^{1/q}
inline ExtendedValue eval_A1(const FunctionalContext& c) {
  const double e_v = (1.0 - c.p) / c.p;
  const double e_u = 1.0 / c.q;
  const Weight& V = c.V();
  const ScanOptions inner = inner_sup_options();
  auto objective = [&](double x) {
    auto inner_obj = [&](double t) {
      LogProduct lp;
      lp.mul_pow(V.between(x, t).value(), e_v);
      lp.mul_pow(c.U(t), e_u);
      return lp.value();
    };
    double wt = c.Wtail_or_nan(x);
    if (std::isnan(wt)) return wt;
    ScanResult s = maximize_scan(inner_obj, x, kInf, inner);
    LogProduct lp;
    lp.mul_pow(wt, -1.0 / c.th);
    lp.mul_pow(s.value.value(), 1.0);
    return lp.value();
  };
  return maximize_scan(objective, 0.0, kInf).value;
}

// A_2 = sup_x Wtail(x)^{-1/θ}
//         · ( ∫_x^∞ (∫_x^t V)^{q(1-p)/(p(1-q))} U(t)^{q/(1-q)} u(t) dt )^{(1-q)/q}
inline ExtendedValue eval_A2(const FunctionalContext& c) {
  const double e_iv = c.q * (1.0 - c.p) / (c.p * (1.0 - c.q));
  const double e_iu = c.q / (1.0 - c.q);
  const double e_out = (1.0 - c.q) / c.q;
  const Weight& V = c.V();
  std::vector<double> anch = merged_anchors({&c.prob.u, &c.prob.v});
  auto objective = [&](double x) {
    auto g = [&](double t) {
      LogProduct lp;
      lp.mul_pow(V.between(x, t).value(), e_iv);
      lp.mul_pow(c.U(t), e_iu);
      lp.mul_value(c.prob.u(t));
      return lp.value();
    };
    double wt = c.Wtail_or_nan(x);
    if (std::isnan(wt)) return wt;
    ExtendedValue I = improper_integral(g, anch, inner_integral_options(), x, kInf);
    LogProduct lp;
    lp.mul_pow(wt, -1.0 / c.th);
    lp.mul_pow(I.value(), e_out);
    return lp.value();
  };
  return maximize_scan(objective, 0.0, kInf, integral_objective_sup_options()).value;
}

// A_3 = sup_t U(t)^{1/q} · esssup_{s∈(0,t)} v(s) Wtail(s)^{-1/θ}
inline ExtendedValue eval_A3(const FunctionalContext& c) {
  const double e_u = 1.0 / c.q;
  const ScanOptions inner = inner_sup_options();
  auto objective = [&](double t) {
    auto inner_obj = [&](double s) {
      double wt = c.Wtail_or_nan(s);
      if (std::isnan(wt)) return wt;
      LogProduct lp;
      lp.mul_value(c.prob.v(s));
      lp.mul_pow(wt, -1.0 / c.th);
      return lp.value();
    };
    double m = sup_with_weight_candidates(inner_obj, 0.0, t, c.prob.v, inner);
    LogProduct lp;
    lp.mul_pow(c.U(t), e_u);
    lp.mul_pow(m, 1.0);
    return lp.value();
  };
  return maximize_scan(objective, 0.0, kInf).value;
}

// A_4 = W0^{-1/θ} · sup_t (∫_0^t V)^{(1-p)/p} U(t)^{1/q}
inline ExtendedValue eval_A4(const FunctionalContext& c) {
  const double e_v = (1.0 - c.p) / c.p;
  const double e_u = 1.0 / c.q;
  const Weight& V = c.V();
  auto objective = [&](double t) {
    LogProduct lp;
    lp.mul_pow(V.from_zero(t).value(), e_v);
    lp.mul_pow(c.U(t), e_u);
    return lp.value();
  };
  ScanResult s = maximize_scan(objective, 0.0, kInf);
  LogProduct lp;
  lp.mul_pow(c.prob.w.total().value(), -1.0 / c.th);
  lp.mul_pow(s.value.value(), 1.0);
  return ExtendedValue(lp.value());
}

// A_5 = sup_t ( ∫_0^t Wtail(s)^{-θ/(θ-p)} w(s) (∫_s^t V)^{θ(1-p)/(θ-p)} ds )^{(θ-p)/(θp)}
//         · U(t)^{1/q}
inline ExtendedValue eval_A5(const FunctionalContext& c) {
  const double e_w = -c.th / (c.th - c.p);
  const double e_iv = c.th * (1.0 - c.p) / (c.th - c.p);
  const double e_out = (c.th - c.p) / (c.th * c.p);
  const double e_u = 1.0 / c.q;
  const Weight& V = c.V();
  std::vector<double> anch = merged_anchors({&c.prob.v, &c.prob.w});
  auto objective = [&](double t) {
    ExtendedValue I =
        layered_head_integral(V, c.prob.w, e_iv, e_w, t, anch, inner_integral_options());
    LogProduct lp;
    lp.mul_pow(I.value(), e_out);
    lp.mul_pow(c.U(t), e_u);
    return lp.value();
  };
  return maximize_scan(objective, 0.0, kInf, integral_objective_sup_options()).value;
}

// Φ(t) = ∫_0^t Wtail(s)^{-θ/(θ-p)} w(s) ds as a cached cumulative table.
inline CumulativeFunction phi_table(const FunctionalContext& c) {
  const double e_w = -c.th / (c.th - c.p);
  const Weight& w = c.prob.w;
  auto f = [&c, e_w](double s) {
    double wt = c.Wtail_or_nan(s);
    if (std::isnan(wt)) return wt;
    LogProduct lp;
    lp.mul_pow(wt, e_w);
    lp.mul_value(c.prob.w(s));
    return lp.value();
  };
  return CumulativeFunction(f, merged_anchors({&w}));
}

// A_6 = ( ∫_0^∞ Φ(t)^{θ(q-p)/(p(θ-q))} Wtail(t)^{-θ/(θ-p)} w(t)
//           · sup_{z>t} (∫_t^z V)^{θq(1-p)/(p(θ-q))} U(z)^{θ/(θ-q)} dt )^{(θ-q)/(θq)}
inline ExtendedValue eval_A6(const FunctionalContext& c) {
  const double e_w = -c.th / (c.th - c.p);
  const double e_phi = c.th * (c.q - c.p) / (c.p * (c.th - c.q));
  const double e_iv = c.th * c.q * (1.0 - c.p) / (c.p * (c.th - c.q));
  const double e_iu = c.th / (c.th - c.q);
  const double e_out = (c.th - c.q) / (c.th * c.q);
  const Weight& V = c.V();
  CumulativeFunction phi = phi_table(c);
  const ScanOptions inner = inner_sup_options();
  auto sup_z = [&](double t) {
    auto io = [&](double z) {
      LogProduct lp;
      lp.mul_pow(V.between(t, z).value(), e_iv);
      lp.mul_pow(c.U(z), e_iu);
      return lp.value();
    };
    return maximize_scan(io, t, kInf, inner).value.value();
  };
  auto g = [&](double t) {
    double wt = c.Wtail_or_nan(t);
    if (std::isnan(wt)) return wt;
    LogProduct lp;
    lp.mul_pow(phi.from_zero(t).value(), e_phi);
    lp.mul_pow(wt, e_w);
    lp.mul_value(c.prob.w(t));
    lp.mul_pow(sup_z(t), 1.0);
    return lp.value();
  };
  ExtendedValue I = improper_integral(g, merged_anchors({&c.prob.u, &c.prob.v, &c.prob.w}),
                                      sup_integrand_options());
  return ExtendedValue(xpow(I.value(), e_out));
}

// A_7 = ( ∫_0^∞ Ψ(t)^{θ(q-p)/(p(θ-q))} Wtail(t)^{-θ/(θ-p)} w(t)
//           · sup_{z>t} (∫_t^z V)^{θ(1-p)/(θ-p)} U(z)^{θ/(θ-q)} dt )^{(θ-q)/(θq)}
// with Ψ(t) = ∫_0^t Wtail(s)^{-θ/(θ-p)} w(s) (∫_s^t V)^{θ(1-p)/(θ-p)} ds.
inline ExtendedValue eval_A7(const FunctionalContext& c, const FunctionalOptions& opts) {
  const double e_w = -c.th / (c.th - c.p);
  const double e_psi = c.th * (1.0 - c.p) / (c.th - c.p);
  const double e_phi = c.th * (c.q - c.p) / (c.p * (c.th - c.q));
  const double e_iv = opts.a7_alternate_exponent ? c.th * (c.q - c.p) / (c.th - c.p)
                                                 : c.th * (1.0 - c.p) / (c.th - c.p);
  const double e_iu = c.th / (c.th - c.q);
  const double e_out = (c.th - c.q) / (c.th * c.q);
  const Weight& V = c.V();
  std::vector<double> anch_vw = merged_anchors({&c.prob.v, &c.prob.w});
  const ScanOptions inner = inner_sup_options();
  QuadOptions psi_opt = inner_integral_options();
  auto sup_z = [&](double t) {
    auto io = [&](double z) {
      LogProduct lp;
      lp.mul_pow(V.between(t, z).value(), e_iv);
      lp.mul_pow(c.U(z), e_iu);
      return lp.value();
    };
    return maximize_scan(io, t, kInf, inner).value.value();
  };
  auto g = [&](double t) {
    double wt = c.Wtail_or_nan(t);
    if (std::isnan(wt)) return wt;
    ExtendedValue psi = layered_head_integral(V, c.prob.w, e_psi, e_w, t, anch_vw, psi_opt);
    LogProduct lp;
    lp.mul_pow(psi.value(), e_phi);
    lp.mul_pow(wt, e_w);
    lp.mul_value(c.prob.w(t));
    lp.mul_pow(sup_z(t), 1.0);
    return lp.value();
  };
  ExtendedValue I = improper_integral(g, merged_anchors({&c.prob.u, &c.prob.v, &c.prob.w}),
                                      sup_integrand_options());
  return ExtendedValue(xpow(I.value(), e_out));
}

// A_8 = W0^{-1/θ} · ( ∫_0^∞ (∫_0^t V)^{q(1-p)/(p(1-q))} U(t)^{q/(1-q)} u(t) dt )^{(1-q)/q}
inline ExtendedValue eval_A8(const FunctionalContext& c) {
  const double e_iv = c.q * (1.0 - c.p) / (c.p * (1.0 - c.q));
  const double e_iu = c.q / (1.0 - c.q);
  const double e_out = (1.0 - c.q) / c.q;
  const Weight& V = c.V();
  auto g = [&](double t) {
    LogProduct lp;
    lp.mul_pow(V.from_zero(t).value(), e_iv);
    lp.mul_pow(c.U(t), e_iu);
    lp.mul_value(c.prob.u(t));
    return lp.value();
  };
  ExtendedValue I = improper_integral(g, merged_anchors({&c.prob.u, &c.prob.v}));
  LogProduct lp;
  lp.mul_pow(c.prob.w.total().value(), -1.0 / c.th);
  lp.mul_pow(I.value(), e_out);
  return ExtendedValue(lp.value());
}

// A_9 = sup_t Φ(t)^{(θ-p)/(θp)}
//         · ( ∫_t^∞ (∫_t^s V)^{q(1-p)/(p(1-q))} U(s)^{q/(1-q)} u(s) ds )^{(1-q)/q}
inline ExtendedValue eval_A9(const FunctionalContext& c) {
  const double e_phi = (c.th - c.p) / (c.th * c.p);
  const double e_iv = c.q * (1.0 - c.p) / (c.p * (1.0 - c.q));
  const double e_iu = c.q / (1.0 - c.q);
  const double e_J = (1.0 - c.q) / c.q;
  const Weight& V = c.V();
  CumulativeFunction phi = phi_table(c);
  std::vector<double> anch = merged_anchors({&c.prob.u, &c.prob.v});
  auto objective = [&](double t) {
    auto g = [&](double s) {
      LogProduct lp;
      lp.mul_pow(V.between(t, s).value(), e_iv);
      lp.mul_pow(c.U(s), e_iu);
      lp.mul_value(c.prob.u(s));
      return lp.value();
    };
    ExtendedValue J = improper_integral(g, anch, inner_integral_options(), t, kInf);
    LogProduct lp;
    lp.mul_pow(phi.from_zero(t).value(), e_phi);
    lp.mul_pow(J.value(), e_J);
    return lp.value();
  };
  return maximize_scan(objective, 0.0, kInf, integral_objective_sup_options()).value;
}

// A_10 = ( ∫_0^∞ Φ(t)^{θ(q-p)/(p(θ-q))} Wtail(t)^{-θ/(θ-p)} w(t)
//            · ( ∫_t^∞ (∫_t^s V)^{q(1-p)/(p(1-q))} U(s)^{q/(1-q)} u(s) ds )^{θ(1-q)/(θ-q)}
//          dt )^{(θ-q)/(θq)}
inline ExtendedValue eval_A10(const FunctionalContext& c) {
  const double e_w = -c.th / (c.th - c.p);
  const double e_phi = c.th * (c.q - c.p) / (c.p * (c.th - c.q));
  const double e_iv = c.q * (1.0 - c.p) / (c.p * (1.0 - c.q));
  const double e_iu = c.q / (1.0 - c.q);
  const double e_J = c.th * (1.0 - c.q) / (c.th - c.q);
  const double e_out = (c.th - c.q) / (c.th * c.q);
  const Weight& V = c.V();
  CumulativeFunction phi = phi_table(c);
  std::vector<double> anch_uv = merged_anchors({&c.prob.u, &c.prob.v});
  QuadOptions j_opt = inner_integral_options();
  auto g = [&](double t) {
    auto h = [&](double s) {
      LogProduct lp;
      lp.mul_pow(V.between(t, s).value(), e_iv);
      lp.mul_pow(c.U(s), e_iu);
      lp.mul_value(c.prob.u(s));
      return lp.value();
    };
    double wt = c.Wtail_or_nan(t);
    if (std::isnan(wt)) return wt;
    ExtendedValue J = improper_integral(h, anch_uv, j_opt, t, kInf);
    LogProduct lp;
    lp.mul_pow(phi.from_zero(t).value(), e_phi);
    lp.mul_pow(wt, e_w);
    lp.mul_value(c.prob.w(t));
    lp.mul_pow(J.value(), e_J);
    return lp.value();
  };
  ExtendedValue I = improper_integral(g, merged_anchors({&c.prob.u, &c.prob.v, &c.prob.w}),
                                      sup_integrand_options());
  return ExtendedValue(xpow(I.value(), e_out));
}

// A_11 = W0^{-1/θ} · sup_t U(t)^{1/q} esssup_{s∈(0,t)} v(s)
inline ExtendedValue eval_A11(const FunctionalContext& c) {
  const double e_u = 1.0 / c.q;
  auto objective = [&](double t) {
    LogProduct lp;
    lp.mul_pow(c.U(t), e_u);
    lp.mul_pow(c.prob.v.ess_sup(0.0, t).value(), 1.0);
    return lp.value();
  };
  // ess_sup(0,t) can step upward past v's breakpoints; scan them explicitly.
  double m = sup_with_weight_candidates(objective, 0.0, kInf, c.prob.v);
  LogProduct lp;
  lp.mul_pow(c.prob.w.total().value(), -1.0 / c.th);
  lp.mul_pow(m, 1.0);
  return ExtendedValue(lp.value());
}

// A_12 = sup_t ( ∫_0^t Wtail(x)^{-θ/(θ-1)} w(x) sup_{z∈(x,t)} v(z)^{θ/(θ-1)} dx )^{(θ-1)/θ}
//          · U(t)^{1/q}
inline ExtendedValue eval_A12(const FunctionalContext& c) {
  const double thp = c.th / (c.th - 1.0);
  const double e_out = (c.th - 1.0) / c.th;
  const double e_u = 1.0 / c.q;
  std::vector<double> anch = merged_anchors({&c.prob.v, &c.prob.w});
  auto objective = [&](double t) {
    auto g = [&](double x) {
      double wt = c.Wtail_or_nan(x);
      if (std::isnan(wt)) return wt;
      LogProduct lp;
      lp.mul_pow(wt, -thp);
      lp.mul_value(c.prob.w(x));
      lp.mul_pow(c.prob.v.ess_sup(x, t).value(), thp);
      return lp.value();
    };
    ExtendedValue I = improper_integral(g, anch, inner_integral_options(), 0.0, t);
    LogProduct lp;
    lp.mul_pow(I.value(), e_out);
    lp.mul_pow(c.U(t), e_u);
    return lp.value();
  };
  return maximize_scan(objective, 0.0, kInf, integral_objective_sup_options()).value;
}

// Λ(t) = ∫_0^t Wtail(x)^{-θ/(θ-1)} w(x) dx as a cached cumulative table.
inline CumulativeFunction lambda_table(const FunctionalContext& c) {
  const double thp = c.th / (c.th - 1.0);
  const Weight& w = c.prob.w;
  auto f = [&c, thp](double x) {
    double wt = c.Wtail_or_nan(x);
    if (std::isnan(wt)) return wt;
    LogProduct lp;
    lp.mul_pow(wt, -thp);
    lp.mul_value(c.prob.w(x));
    return lp.value();
  };
  return CumulativeFunction(f, merged_anchors({&w}));
}

// A_13 = ( ∫_0^∞ Λ(t)^{θ(q-1)/(θ-q)} Wtail(t)^{-θ/(θ-1)} w(t)
//            · sup_{z>t} v(z)^{θq/(θ-q)} U(z)^{θ/(θ-q)} dt )^{(θ-q)/(θq)}
inline ExtendedValue eval_A13(const FunctionalContext& c) {
  const double thp = c.th / (c.th - 1.0);
  const double e_lam = c.th * (c.q - 1.0) / (c.th - c.q);
  const double e_v = c.th * c.q / (c.th - c.q);
  const double e_iu = c.th / (c.th - c.q);
  const double e_out = (c.th - c.q) / (c.th * c.q);
  CumulativeFunction lam = lambda_table(c);
  const ScanOptions inner = inner_sup_options();
  auto sup_z = [&](double t) {
    auto io = [&](double z) {
      LogProduct lp;
      lp.mul_pow(c.prob.v(z), e_v);
      lp.mul_pow(c.U(z), e_iu);
      return lp.value();
    };
    return sup_with_weight_candidates(io, t, kInf, c.prob.v, inner);
  };
  auto g = [&](double t) {
    double wt = c.Wtail_or_nan(t);
    if (std::isnan(wt)) return wt;
    LogProduct lp;
    lp.mul_pow(lam.from_zero(t).value(), e_lam);
    lp.mul_pow(wt, -thp);
    lp.mul_value(c.prob.w(t));
    lp.mul_pow(sup_z(t), 1.0);
    return lp.value();
  };
  ExtendedValue I = improper_integral(g, merged_anchors({&c.prob.u, &c.prob.v, &c.prob.w}),
                                      sup_integrand_options());
  return ExtendedValue(xpow(I.value(), e_out));
}

// A_14 = ( ∫_0^∞ M(t)^{θ(q-1)/(θ-q)} Wtail(t)^{-θ/(θ-1)} w(t)
//            · sup_{z>t} v(z)^{θ/(θ-1)} U(z)^{θ/(θ-q)} dt )^{(θ-q)/(θq)}
// with M(t) = ∫_0^t Wtail(x)^{-θ/(θ-1)} w(x) sup_{z∈(x,t)} v(z)^{θ/(θ-1)} dx.
inline ExtendedValue eval_A14(const FunctionalContext& c) {
  const double thp = c.th / (c.th - 1.0);
  const double e_M = c.th * (c.q - 1.0) / (c.th - c.q);
  const double e_iu = c.th / (c.th - c.q);
  const double e_out = (c.th - c.q) / (c.th * c.q);
  std::vector<double> anch_vw = merged_anchors({&c.prob.v, &c.prob.w});
  const ScanOptions inner = inner_sup_options();
  QuadOptions m_opt = inner_integral_options();
  auto sup_z = [&](double t) {
    auto io = [&](double z) {
      LogProduct lp;
      lp.mul_pow(c.prob.v(z), thp);
      lp.mul_pow(c.U(z), e_iu);
      return lp.value();
    };
    return sup_with_weight_candidates(io, t, kInf, c.prob.v, inner);
  };
  auto g = [&](double t) {
    double wt = c.Wtail_or_nan(t);
    if (std::isnan(wt)) return wt;
    auto h = [&](double x) {
      double wx = c.Wtail_or_nan(x);
      if (std::isnan(wx)) return wx;
      LogProduct lp;
      lp.mul_pow(wx, -thp);
      lp.mul_value(c.prob.w(x));
      lp.mul_pow(c.prob.v.ess_sup(x, t).value(), thp);
      return lp.value();
    };
    ExtendedValue M = improper_integral(h, anch_vw, m_opt, 0.0, t);
    LogProduct lp;
    lp.mul_pow(M.value(), e_M);
    lp.mul_pow(wt, -thp);
    lp.mul_value(c.prob.w(t));
    lp.mul_pow(sup_z(t), 1.0);
    return lp.value();
  };
  ExtendedValue I = improper_integral(g, merged_anchors({&c.prob.u, &c.prob.v, &c.prob.w}),
                                      sup_integrand_options());
  return ExtendedValue(xpow(I.value(), e_out));
}

inline ExtendedValue eval_A(int index, const FunctionalContext& c,
                            const FunctionalOptions& opts) {
  switch (index) {
    case 1: return eval_A1(c);
    case 2: return eval_A2(c);
    case 3: return eval_A3(c);
    case 4: return eval_A4(c);
    case 5: return eval_A5(c);
    case 6: return eval_A6(c);
    case 7: return eval_A7(c, opts);
    case 8: return eval_A8(c);
    case 9: return eval_A9(c);
    case 10: return eval_A10(c);
    case 11: return eval_A11(c);
    case 12: return eval_A12(c);
    case 13: return eval_A13(c);
    case 14: return eval_A14(c);
  }
  throw std::invalid_argument("functional_A: index must be in 1..14");
}

}  // namespace detail

// Reject index/parameter combinations whose defining exponents divide by
// zero; everything else is evaluable (possibly out of regime).
inline void require_nondegenerate(int index, const Parameters& prm) {
  const double p = prm.p.value, q = prm.q.value, th = prm.theta.value;
  auto same = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  auto need = [&](bool ok, const char* what) {
    if (!ok)
      throw UnsupportedRegimeError("functional A_" + std::to_string(index) +
                                   " is degenerate at these parameters: " + what);
  };
  const bool needs_V = (index >= 1 && index <= 10 && index != 3);
  if (needs_V) need(!same(p, 1.0), "p = 1 degenerates V = v^{1/(1-p)}");
  switch (index) {
    case 2: case 8:
      need(!same(q, 1.0), "q = 1 degenerates the exponent q/(1-q)");
      break;
    case 5:
      need(!same(th, p), "theta = p degenerates the exponent theta/(theta-p)");
      break;
    case 6:
      need(!same(th, p), "theta = p degenerates the exponent theta/(theta-p)");
      need(!same(th, q), "theta = q degenerates the exponent theta/(theta-q)");
      break;
    case 7:
      need(!same(th, p), "theta = p degenerates the exponent theta/(theta-p)");
      need(!same(th, q), "theta = q degenerates the exponent theta/(theta-q)");
      break;
    case 9:
      need(!same(q, 1.0), "q = 1 degenerates the exponent q/(1-q)");
      need(!same(th, p), "theta = p degenerates the exponent theta/(theta-p)");
      break;
    case 10:
      need(!same(q, 1.0), "q = 1 degenerates the exponent q/(1-q)");
      need(!same(th, p), "theta = p degenerates the exponent theta/(theta-p)");
      need(!same(th, q), "theta = q degenerates the exponent theta/(theta-q)");
      break;
    case 12:
      need(!same(th, 1.0), "theta = 1 degenerates the exponent theta/(theta-1)");
      break;
    case 13: case 14:
      need(!same(th, 1.0), "theta = 1 degenerates the exponent theta/(theta-1)");
      need(!same(th, q), "theta = q degenerates the exponent theta/(theta-q)");
      break;
    default:
      break;
  }
}

inline ExtendedValue functional_A(int index, const ReducedProblem& prob,
                                  const FunctionalOptions& opts = {}) {
  if (index < 1 || index > 14)
    throw std::invalid_argument("functional_A: index must be in 1..14");
  require_nondegenerate(index, prob.params);
  if (prob.u.is_zero()) return ExtendedValue(0.0);
  detail::FunctionalContext c(prob);
  return detail::eval_A(index, c, opts);
}

// ---------------------------------------------------------------------------
// Case-wise combination
// ---------------------------------------------------------------------------

struct ConstantReport {
  Regime regime = Regime::Unsupported_other;
  std::vector<int> formula_indices;
  std::map<int, ExtendedValue> components;
  ExtendedValue combined{0.0};
  AdmissibilityReport admissibility;
  // True when every hypothesis passed; otherwise combined is reported but
  // carries no guarantee (not-applicable verdict).
  bool applicable = true;
};

inline ConstantReport embedding_constant(const ReducedProblem& prob,
                                         const FunctionalOptions& opts = {}) {
  const Regime r = classify(prob.params);
  if (r == Regime::Trivial_p_gt_1)
    throw UnsupportedRegimeError(
        "p > 1: the inequality admits only trivial f and no finite best constant; "
        "use triviality_probe to demonstrate the blow-up");
  if (!is_theorem_regime(r))
    throw UnsupportedRegimeError(std::string("regime ") + to_string(r) +
                                 ": no characterization is available for q <= p or the "
                                 "remaining boundary combinations");
  ConstantReport rep;
  rep.regime = r;
  rep.formula_indices = formula_set(r);
  rep.admissibility = check_admissibility(prob);
  rep.applicable = rep.admissibility.all_pass;
  detail::FunctionalContext c(prob);
  ExtendedValue sum(0.0);
  for (int idx : rep.formula_indices) {
    require_nondegenerate(idx, prob.params);
    ExtendedValue a = prob.u.is_zero() ? ExtendedValue(0.0) : detail::eval_A(idx, c, opts);
    rep.components[idx] = a;
    sum = sum + a;
  }
  rep.combined = sum;
  return rep;
}

}  // namespace cesembed
