#pragma once

// Reverse Hardy-type constants.  The underlying inequality runs the other
// way around:
//
//   ( ∫_0^∞ f^p v )^{1/p}  <=  C · ( ∫_0^∞ ( ∫_0^t f )^q w(t) dt )^{1/q}
//
// for 0 < p <= 1.  Writing V := v^{1/(1-p)} (p < 1) and W(t) := ∫_t^∞ w:
//
//   q <= p:  R_1 = sup_t W(t)^{-1/q} ( ∫_t^∞ V )^{(1-p)/p}            (p < 1)
//            R_2 = sup_t W(t)^{-1/q} esssup_{s in (t,∞)} v(s)          (p = 1)
//   p <  q:  R_3 = ( ∫_0^∞ ( ∫_t^∞ V )^{q(1-p)/(q-p)} W(t)^{-q/(q-p)} w(t) dt )^{(q-p)/(qp)}
//                  + ( ∫_0^∞ V )^{(1-p)/p} W(0)^{-1/q}                 (p < 1)
//            R_4 = ( ∫_0^∞ ( esssup_{s in (t,∞)} v(s) )^{q/(q-1)} W(t)^{-q/(q-1)} w(t) dt )^{(q-1)/q}
//                  + ( esssup v ) · W(0)^{-1/q}                        (p = 1)
//
// The p < q branch additionally requires w not identically zero.

#include <cmath>
#include <string>

#include "cesembed/errors.hpp"
#include "cesembed/extended_value.hpp"
#include "cesembed/hardy.hpp"
#include "cesembed/scan.hpp"
#include "cesembed/weight.hpp"

namespace cesembed {

inline RefConstant reverse_hardy_constant(double p, double q, const Weight& v,
                                          const Weight& w) {
  if (!(p > 0.0) || p > 1.0 + 1e-12)
    throw UnsupportedRegimeError("reverse_hardy_constant requires 0 < p <= 1");
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::invalid_argument("reverse_hardy_constant requires 0 < q < inf");
  const bool p_is_one = std::abs(p - 1.0) <= 1e-12;

  if (w.diverges_at_inf())
    throw AdmissibilityError(
        "reverse_hardy_constant: tail of w is infinite; the inequality needs "
        "finite tails of w at every t");

  if (v.is_zero()) {
    return {ExtendedValue(0.0), q <= p ? (p_is_one ? "R2" : "R1")
                                       : (p_is_one ? "R4" : "R3"), {}};
  }

  const bool q_le_p = q <= p + 1e-12 * std::max(q, p);

  if (q_le_p) {
    if (!p_is_one) {
      Weight V = v.power(1.0 / (1.0 - p));
      auto obj = [&](double t) {
        LogProduct lp;
        lp.mul_pow(w.tail(t).value(), -1.0 / q);
        lp.mul_pow(V.tail(t).value(), (1.0 - p) / p);
        return lp.value();
      };
      return {maximize_scan(obj, 0.0, kInf).value, "R1", {}};
    }
    auto obj = [&](double t) {
      LogProduct lp;
      lp.mul_pow(w.tail(t).value(), -1.0 / q);
      lp.mul_pow(v.ess_sup(t, kInf).value(), 1.0);
      return lp.value();
    };
    return {maximize_scan(obj, 0.0, kInf).value, "R2", {}};
  }

  // p < q branch.
  if (w.is_zero())
    throw AdmissibilityError(
        "reverse_hardy_constant: the p < q characterization requires w not "
        "identically zero");

  ExtendedValue W0 = w.total();
  if (!p_is_one) {
    Weight V = v.power(1.0 / (1.0 - p));
    const double e1 = q * (1.0 - p) / (q - p);
    const double e2 = -q / (q - p);
    auto integrand = [&](double t) {
      LogProduct lp;
      lp.mul_pow(V.tail(t).value(), e1);
      lp.mul_pow(w.tail(t).value(), e2);
      lp.mul_value(w(t));
      return lp.value();
    };
    ExtendedValue I = improper_integral(integrand, detail::merged_anchors(v, w));
    ExtendedValue first = I.is_infinite()
                              ? ExtendedValue::infinity()
                              : ExtendedValue(xpow(I.value(), (q - p) / (q * p)));
    ExtendedValue second =
        ExtendedValue(xpow(V.total().value(), (1.0 - p) / p)) *
        ExtendedValue(xpow(W0.value(), -1.0 / q));
    return {first + second, "R3", {}};
  }

  const double e = q / (q - 1.0);
  auto integrand = [&](double t) {
    LogProduct lp;
    lp.mul_pow(v.ess_sup(t, kInf).value(), e);
    lp.mul_pow(w.tail(t).value(), -e);
    lp.mul_value(w(t));
    return lp.value();
  };
  ExtendedValue I = improper_integral(integrand, detail::merged_anchors(v, w));
  ExtendedValue first = I.is_infinite()
                            ? ExtendedValue::infinity()
                            : ExtendedValue(xpow(I.value(), (q - 1.0) / q));
  ExtendedValue second = v.ess_sup(0.0, kInf) * ExtendedValue(xpow(W0.value(), -1.0 / q));
  return {first + second, "R4", {}};
}

}  // namespace cesembed
