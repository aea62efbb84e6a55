#pragma once

// Direct Hardy-type constants.  The underlying inequality is
//
//   ( ∫_0^∞ ( ∫_t^∞ f )^q w(t) dt )^{1/q}  <=  C · ( ∫_0^∞ f^p v )^{1/p}
//
// for p > 1, characterized by
//
//   H_1 = sup_t ( ∫_0^t w )^{1/q} ( ∫_t^∞ v^{1-p'} )^{1/p'}          (p <= q)
//   H_2 = ( ∫_0^∞ ( ∫_0^t w )^{p/(p-q)} ( ∫_t^∞ v^{1-p'} )^{p(q-1)/(p-q)}
//           v(t)^{1-p'} dt )^{(p-q)/(pq)}                             (q < p)
//
// and for the supremum-form inequality
//   esssup_t w(t) ∫_t^∞ f  <=  C · ( ∫_0^∞ f^p v )^{1/p}
// by
//   H_3 = sup_t ( esssup_{s in (0,t)} w(s) ) ( ∫_t^∞ v^{1-p'} )^{1/p'}.

#include <cmath>
#include <string>
#include <vector>

#include "cesembed/errors.hpp"
#include "cesembed/extended_value.hpp"
#include "cesembed/problem.hpp"
#include "cesembed/scan.hpp"
#include "cesembed/weight.hpp"

namespace cesembed {

struct RefConstant {
  ExtendedValue value{0.0};
  std::string case_tag;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<double> merged_anchors(const Weight& a, const Weight& b) {
  std::vector<double> out = a.anchors();
  for (double t : b.anchors()) out.push_back(t);
  return out;
}

inline std::vector<double> merged_anchors(const Weight& a, const Weight& b, const Weight& c) {
  std::vector<double> out = merged_anchors(a, b);
  for (double t : c.anchors()) out.push_back(t);
  return out;
}

}  // namespace detail

inline RefConstant hardy_constant(double p, double q, const Weight& v, const Weight& w) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw UnsupportedRegimeError("hardy_constant requires p > 1");
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::invalid_argument("hardy_constant requires 0 < q < inf");
  if (w.is_zero()) return {ExtendedValue(0.0), p <= q ? "H1" : "H2", {}};

  const double pprime = p / (p - 1.0);
  Weight vd = v.power(1.0 - pprime);  // v^{1-p'} = v^{1/(1-p)}

  if (p <= q + 1e-12 * std::max(p, q)) {
    auto obj = [&](double t) {
      LogProduct lp;
      lp.mul_pow(w.from_zero(t).value(), 1.0 / q);
      lp.mul_pow(vd.tail(t).value(), 1.0 / pprime);
      return lp.value();
    };
    ScanResult r = maximize_scan(obj, 0.0, kInf);
    return {r.value, "H1", {}};
  }

  const double e1 = p / (p - q);
  const double e2 = p * (q - 1.0) / (p - q);
  auto integrand = [&](double t) {
    LogProduct lp;
    lp.mul_pow(w.from_zero(t).value(), e1);
    lp.mul_pow(vd.tail(t).value(), e2);
    lp.mul_value(vd(t));
    return lp.value();
  };
  ExtendedValue I = improper_integral(integrand, detail::merged_anchors(v, w));
  ExtendedValue H2 = (I.is_infinite()) ? ExtendedValue::infinity()
                                       : ExtendedValue(xpow(I.value(), (p - q) / (p * q)));
  return {H2, "H2", {}};
}

inline RefConstant hardy_sup_constant(double p, const Weight& v, const Weight& w) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw UnsupportedRegimeError("hardy_sup_constant requires p > 1");
  if (w.is_zero()) return {ExtendedValue(0.0), "H3", {}};
  const double pprime = p / (p - 1.0);
  Weight vd = v.power(1.0 - pprime);
  auto obj = [&](double t) {
    LogProduct lp;
    lp.mul_pow(w.ess_sup(0.0, t).value(), 1.0);
    lp.mul_pow(vd.tail(t).value(), 1.0 / pprime);
    return lp.value();
  };
  ScanResult r = maximize_scan(obj, 0.0, kInf);
  return {r.value, "H3", {}};
}

}  // namespace cesembed
