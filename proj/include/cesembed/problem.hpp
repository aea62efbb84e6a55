#pragma once

// Problem assembly: the reduced three-weight form of the embedding
// inequality, the substitution that produces it from a pair of weighted
// spaces, and the half-line inversion that carries the dual-type weights to
// this normal form.
//
// The reduced inequality reads
//
//   ( ∫_0^∞ ( ∫_0^t f(s)^p v(s) ds )^{q/p} u(t) dt )^{1/q}
//       <=  C · ( ∫_0^∞ ( ∫_0^t f(s) ds )^θ w(t) dt )^{1/θ}
//
// with parameters p = p2/p1, q = q2/p1, θ = q1/p1 and weights
// u = u2^{q2}, v = v1^{-p2}·v2^{p2}, w = u1^{q1}.

#include <string>
#include <utility>
#include <vector>

#include "cesembed/errors.hpp"
#include "cesembed/parameters.hpp"
#include "cesembed/weight.hpp"

namespace cesembed {

struct ReducedProblem {
  Parameters params;
  Weight u, v, w;
};

inline ParamValue pv_div(const ParamValue& a, const ParamValue& b) {
  if (a.exact && b.exact) return ParamValue::of(*a.exact / *b.exact);
  return ParamValue::of(a.value / b.value);
}

// Pointwise product of two weights.  Analytic x analytic is exact (exponent
// sums on interval intersections); any tabulated operand samples the product
// on the merged node set, which is exact on cells the grids share.
inline Weight pointwise_product(const Weight& a, const Weight& b) {
  using Kind = Weight::Kind;
  if (a.kind() == Kind::Analytic && b.kind() == Kind::Analytic) {
    std::vector<AnalyticSegment> out;
    for (const auto& sa : a.segments()) {
      for (const auto& sb : b.segments()) {
        double lo = std::max(sa.from, sb.from);
        double hi = std::min(sa.to, sb.to);
        if (lo >= hi) continue;
        AnalyticSegment s;
        s.c = sa.c * sb.c;
        if (std::isnan(s.c)) s.c = kInf;  // inf * 0: keep the poisoned region
        bool degenerate = (s.c == 0.0) || std::isinf(s.c);
        s.alpha = degenerate ? 0.0 : sa.alpha + sb.alpha;
        s.beta = degenerate ? 0.0 : sa.beta + sb.beta;
        s.gamma = degenerate ? 0.0 : sa.gamma + sb.gamma;
        s.gamma_inv = degenerate ? 0.0 : sa.gamma_inv + sb.gamma_inv;
        s.from = lo;
        s.to = hi;
        out.push_back(s);
      }
    }
    if (out.empty()) out.push_back({0.0, 0, 0, 0, 0, 0.0, kInf});
    return Weight::analytic(std::move(out));
  }
  // Sampled fallback on the union of both node sets.
  std::vector<double> nodes;
  for (const Weight* w : {&a, &b}) {
    if (w->kind() == Kind::Tabulated)
      for (double t : w->sample_points()) nodes.push_back(t);
    else
      for (double t : w->anchors()) nodes.push_back(t);
  }
  if (nodes.empty()) nodes = {1.0};
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::vector<std::pair<double, double>> samples;
  samples.reserve(nodes.size());
  for (double t : nodes) samples.emplace_back(t, a(t) * b(t));
  return Weight::tabulated(std::move(samples));
}

namespace detail {

inline void require_strictly_positive(const Weight& w, const std::string& name) {
  if (w.kind() == Weight::Kind::Analytic) {
    double covered = 0.0;
    for (const auto& s : w.segments()) {
      if (s.from > covered)
        throw DegenerateWeightError(name + " must be strictly positive; it is zero on (" +
                                    std::to_string(covered) + ", " + std::to_string(s.from) + ")");
      if (s.c <= 0.0)
        throw DegenerateWeightError(name + " must be strictly positive; found a zero segment");
      covered = s.to;
    }
    if (covered < kInf)
      throw DegenerateWeightError(name + " must be strictly positive; it is zero beyond " +
                                  std::to_string(covered));
    return;
  }
  for (double y : w.sample_values())
    if (!(y > 0.0))
      throw DegenerateWeightError(name + " must be strictly positive; found a non-positive sample");
}

}  // namespace detail

// Build the reduced problem from the two-space data.
inline ReducedProblem reduce_embedding(const ParamValue& p1, const ParamValue& q1,
                                       const ParamValue& p2, const ParamValue& q2,
                                       const Weight& u1, const Weight& v1,
                                       const Weight& u2, const Weight& v2) {
  for (const ParamValue* x : {&p1, &q1, &p2, &q2})
    if (!(x->value > 0.0) || !std::isfinite(x->value))
      throw std::invalid_argument("reduce_embedding: exponents must be finite and > 0");
  detail::require_strictly_positive(v1, "v1");
  Parameters prm(pv_div(p2, p1), pv_div(q2, p1), pv_div(q1, p1));
  Weight u = u2.power(q2.value);
  Weight v = pointwise_product(v1.power(-p2.value), v2.power(p2.value));
  Weight w = u1.power(q1.value);
  return ReducedProblem{prm, std::move(u), std::move(v), std::move(w)};
}

// Half-line inversion t -> 1/t with the normalizing prefactor t^{-2/e}:
// maps a weight x(t) to x~(t) = t^{-2/e} x(1/t).  Applying it twice with the
// same exponent returns the original weight.
inline Weight invert_weight(const Weight& x, double e) {
  if (x.kind() == Weight::Kind::Analytic) {
    std::vector<AnalyticSegment> out;
    for (const auto& s : x.segments()) {
      AnalyticSegment m;
      m.c = s.c;
      bool degenerate = (s.c == 0.0) || std::isinf(s.c);
      // t^alpha (1+t)^beta e^{gamma t + delta/t} at 1/t equals
      // t^{-alpha-beta} (1+t)^beta e^{delta t + gamma/t}.
      m.alpha = degenerate ? 0.0 : -2.0 / e - s.alpha - s.beta;
      m.beta = degenerate ? 0.0 : s.beta;
      m.gamma = degenerate ? 0.0 : s.gamma_inv;
      m.gamma_inv = degenerate ? 0.0 : s.gamma;
      m.from = (s.to == kInf) ? 0.0 : 1.0 / s.to;
      m.to = (s.from == 0.0) ? kInf : 1.0 / s.from;
      out.push_back(m);
    }
    return Weight::analytic(std::move(out));
  }
  std::vector<std::pair<double, double>> samples;
  const auto& ts = x.sample_points();
  const auto& ys = x.sample_values();
  for (std::size_t i = ts.size(); i-- > 0;) {
    double t = 1.0 / ts[i];
    samples.emplace_back(t, std::pow(t, -2.0 / e) * ys[i]);
  }
  return Weight::tabulated(std::move(samples));
}

// The dual-type pair (u_i, v_i) with exponents (q_i, p_i) maps to reduced
// form via the inversion above applied to each weight with its exponent.
inline std::pair<Weight, Weight> copson_to_cesaro(const ParamValue& qi, const ParamValue& pi,
                                                  const Weight& ui, const Weight& vi) {
  if (!(qi.value > 0.0) || !(pi.value > 0.0))
    throw std::invalid_argument("copson_to_cesaro: exponents must be > 0");
  return {invert_weight(ui, qi.value), invert_weight(vi, pi.value)};
}

}  // namespace cesembed
