#pragma once

// Iterated (Copson-type) constants.  Two inequality shapes for p > 1,
// 0 < q, m < inf, with r := pq/(p-q) when q < p, sigma(t) := ∫_t^∞ v^{1-p'}:
//
// Integral inner operator
//   ( ∫_0^∞ ( ∫_t^∞ ( ∫_s^∞ f )^m u(s) ds )^{q/m} w(t) dt )^{1/q}
//       <=  C · ( ∫_0^∞ f^p v )^{1/p}
// characterized case-wise with
//   D(t)   = ∫_0^t w(s) ( ∫_s^t u )^{q/m} ds            (positivity object)
//   I_1 = sup_t D(t)^{1/q} sigma(t)^{1/p'}
//   I_2 = ( ∫_0^∞ (∫_0^t w)^{r/p} w(t) sup_{z>t} (∫_t^z u)^{r/m} sigma(z)^{r/p'} dt )^{1/r}
//   I_3 = ( ∫_0^∞ sup_{z>t} [ (∫_t^z u)^{q/m} sigma(z)^{r/p'} ] D(t)^{r/p} w(t) dt )^{1/r}
//   I_4 = sup_t (∫_0^t w)^{1/q} ( ∫_t^∞ (∫_t^s u)^{p/(p-m)} sigma(s)^{p(m-1)/(p-m)} v(s)^{1-p'} ds )^{(p-m)/(pm)}
//   I_5 = ( ∫_0^∞ (∫_0^t w)^{r/p} w(t) ( ∫_t^∞ (∫_t^s u)^{p/(p-m)} sigma(s)^{p(m-1)/(p-m)} v(s)^{1-p'} ds )^{q(p-m)/(m(p-q))} dt )^{1/r}
//   cases: p <= min{m,q} -> I_1;  q < p <= m -> I_2 + I_3;
//          m < p <= q   -> I_1 + I_4;  max{m,q} < p -> I_3 + I_5.
//
// Supremum inner operator (u continuous)
//   ( ∫_0^∞ ( sup_{s in (t,∞)} u(s) ∫_s^∞ f )^q w(t) dt )^{1/q}
//       <=  C · ( ∫_0^∞ f^p v )^{1/p}
// with E(s,t) := sup_{z in (s,t)} u(z), G(t) := ∫_0^t w(s) E(s,t)^q ds:
//   I_6 = sup_t G(t)^{1/q} sigma(t)^{1/p'}
//   I_7 = ( ∫_0^∞ (∫_0^t w)^{r/p} w(t) sup_{s>t} u(s)^r sigma(s)^{r/p'} dt )^{1/r}
//   I_8 = ( ∫_0^∞ G(t)^{r/p} w(t) sup_{z>t} u(z)^q sigma(z)^{r/p'} dt )^{1/r}
//   cases: p <= q -> I_6;  q < p -> I_7 + I_8.
//
// Positivity hypotheses (0 < D(t) < inf, resp. 0 < ∫_0^t u,v,w < inf) are
// checked on a geometric grid; hard failures (infinite values) raise an
// admissibility error naming the failing t, while endpoint degeneracy toward
// t -> 0 only produces a warning.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cesembed/errors.hpp"
#include "cesembed/extended_value.hpp"
#include "cesembed/hardy.hpp"
#include "cesembed/scan.hpp"
#include "cesembed/weight.hpp"

namespace cesembed {

struct IteratedConstant {
  ExtendedValue value{0.0};
  std::string case_tag;
  std::map<std::string, ExtendedValue> terms;
  std::vector<std::string> warnings;
};

namespace detail {

inline ScanOptions inner_scan_options() {
  ScanOptions o;
  o.grid = 128;  // inner suprema run inside outer quadrature; keep them lean
  return o;
}

inline std::string format_t(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

// Check 0 < value(t) < inf on a geometric grid.  Returns a warning string
// for endpoint degeneracy (zero at the small end only); throws on infinite
// values; sets all_zero when the object vanishes identically on the grid.
inline std::vector<std::string> check_positivity_grid(
    const std::function<ExtendedValue(double)>& value, const std::string& name,
    bool& all_zero) {
  std::vector<std::string> warnings;
  bool seen_positive = false;
  bool zero_after_positive = false;
  double first_zero_t = 0.0;
  for (int k = 0; k < 64; ++k) {
    double t = std::pow(10.0, -6.0 + 12.0 * k / 63.0);
    ExtendedValue x = value(t);
    if (x.is_infinite())
      throw AdmissibilityError(name + " is infinite at t = " + format_t(t) +
                               "; positivity hypothesis fails");
    if (x.is_zero()) {
      if (!seen_positive) first_zero_t = t;
      else zero_after_positive = true;
    } else {
      if (!seen_positive && first_zero_t > 0.0)
        warnings.push_back(name + " vanishes toward t -> 0 (zero at t = " +
                           format_t(first_zero_t) + "); endpoint degeneracy, not failure");
      seen_positive = true;
    }
  }
  all_zero = !seen_positive;
  if (zero_after_positive)
    warnings.push_back(name + " returns to zero at larger t; hypothesis holds only "
                       "on part of the axis");
  return warnings;
}

}  // namespace detail

inline IteratedConstant iterated_copson_constant(double p, double q, double m,
                                                 const Weight& u, const Weight& v,
                                                 const Weight& w) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw UnsupportedRegimeError("iterated_copson_constant requires p > 1");
  if (!(q > 0.0) || !std::isfinite(q) || !(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("iterated_copson_constant requires 0 < q, m < inf");

  IteratedConstant out;
  const double eps = 1e-12;
  const bool p_le_q = p <= q * (1.0 + eps);
  const bool p_le_m = p <= m * (1.0 + eps);
  out.case_tag = p_le_q ? (p_le_m ? "I1" : "I1+I4") : (p_le_m ? "I2+I3" : "I3+I5");

  if (u.is_zero() || w.is_zero()) return out;  // inner operator vanishes

  const double pprime = p / (p - 1.0);
  Weight vd = v.power(1.0 - pprime);
  auto sigma = [&](double z) { return vd.tail(z); };

  auto D = [&](double t) -> ExtendedValue {
    auto integrand = [&](double s) {
      if (!(s < t)) return 0.0;  // quadrature may touch the endpoint itself
      LogProduct lp;
      lp.mul_value(w(s));
      lp.mul_pow(u.between(s, t).value(), q / m);
      return lp.value();
    };
    return improper_integral(integrand, detail::merged_anchors(u, w), {}, 0.0, t);
  };

  bool all_zero = false;
  out.warnings = detail::check_positivity_grid(
      D, "inner positivity object (integral of w against inner u-integrals)", all_zero);
  if (all_zero) return out;

  std::vector<double> anchors = detail::merged_anchors(u, v, w);
  ScanOptions inner = detail::inner_scan_options();

  auto I1 = [&]() {
    auto obj = [&](double t) {
      LogProduct lp;
      lp.mul_pow(D(t).value(), 1.0 / q);
      lp.mul_pow(sigma(t).value(), 1.0 / pprime);
      return lp.value();
    };
    return maximize_scan(obj, 0.0, kInf).value;
  };

  auto I4 = [&]() {
    const double em = p / (p - m);
    const double es = p * (m - 1.0) / (p - m);
    auto obj = [&](double t) {
      auto inner_f = [&](double s) {
        LogProduct lp;
        lp.mul_pow(u.between(t, s).value(), em);
        lp.mul_pow(sigma(s).value(), es);
        lp.mul_value(vd(s));
        return lp.value();
      };
      ExtendedValue J = improper_integral(inner_f, anchors, {}, t, kInf);
      LogProduct lp;
      lp.mul_pow(w.from_zero(t).value(), 1.0 / q);
      lp.mul_pow(J.value(), (p - m) / (p * m));
      return lp.value();
    };
    return maximize_scan(obj, 0.0, kInf, ScanOptions{}).value;
  };

  if (p_le_q) {
    ExtendedValue a = I1();
    out.terms["I1"] = a;
    if (p_le_m) {
      out.value = a;
      return out;
    }
    ExtendedValue b = I4();
    out.terms["I4"] = b;
    out.value = a + b;
    return out;
  }

  // q < p: r is defined.
  const double r = p * q / (p - q);

  auto I3 = [&]() {
    auto integrand = [&](double t) {
      auto zobj = [&](double z) {
        LogProduct lp;
        lp.mul_pow(u.between(t, z).value(), q / m);
        lp.mul_pow(sigma(z).value(), r / pprime);
        return lp.value();
      };
      ExtendedValue s = maximize_scan(zobj, t, kInf, inner).value;
      LogProduct lp;
      lp.mul_pow(s.value(), 1.0);
      lp.mul_pow(D(t).value(), r / p);
      lp.mul_value(w(t));
      return lp.value();
    };
    ExtendedValue I = improper_integral(integrand, anchors);
    return I.is_infinite() ? ExtendedValue::infinity()
                           : ExtendedValue(xpow(I.value(), 1.0 / r));
  };

  if (p_le_m) {
    // I_2 + I_3.
    auto integrand = [&](double t) {
      auto zobj = [&](double z) {
        LogProduct lp;
        lp.mul_pow(u.between(t, z).value(), r / m);
        lp.mul_pow(sigma(z).value(), r / pprime);
        return lp.value();
      };
      ExtendedValue s = maximize_scan(zobj, t, kInf, inner).value;
      LogProduct lp;
      lp.mul_pow(w.from_zero(t).value(), r / p);
      lp.mul_value(w(t));
      lp.mul_pow(s.value(), 1.0);
      return lp.value();
    };
    ExtendedValue I = improper_integral(integrand, anchors);
    ExtendedValue a = I.is_infinite() ? ExtendedValue::infinity()
                                      : ExtendedValue(xpow(I.value(), 1.0 / r));
    ExtendedValue b = I3();
    out.terms["I2"] = a;
    out.terms["I3"] = b;
    out.value = a + b;
    return out;
  }

  // max{m,q} < p: I_3 + I_5.
  const double em = p / (p - m);
  const double es = p * (m - 1.0) / (p - m);
  auto integrand5 = [&](double t) {
    auto inner_f = [&](double s) {
      LogProduct lp;
      lp.mul_pow(u.between(t, s).value(), em);
      lp.mul_pow(sigma(s).value(), es);
      lp.mul_value(vd(s));
      return lp.value();
    };
    ExtendedValue J = improper_integral(inner_f, anchors, {}, t, kInf);
    LogProduct lp;
    lp.mul_pow(w.from_zero(t).value(), r / p);
    lp.mul_value(w(t));
    lp.mul_pow(J.value(), q * (p - m) / (m * (p - q)));
    return lp.value();
  };
  ExtendedValue I5 = improper_integral(integrand5, anchors);
  ExtendedValue a = I3();
  ExtendedValue b = I5.is_infinite() ? ExtendedValue::infinity()
                                     : ExtendedValue(xpow(I5.value(), 1.0 / r));
  out.terms["I3"] = a;
  out.terms["I5"] = b;
  out.value = a + b;
  return out;
}

inline IteratedConstant iterated_sup_copson_constant(double p, double q, const Weight& u,
                                                     const Weight& v, const Weight& w) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw UnsupportedRegimeError("iterated_sup_copson_constant requires p > 1");
  if (!(q > 0.0) || !std::isfinite(q))
    throw std::invalid_argument("iterated_sup_copson_constant requires 0 < q < inf");

  IteratedConstant out;
  const bool p_le_q = p <= q * (1.0 + 1e-12);
  out.case_tag = p_le_q ? "I6" : "I7+I8";
  if (u.is_zero() || w.is_zero()) return out;

  // Finiteness/positivity of the partial masses of u, v, w.  Divergence at 0
  // is decided by the weight's exact predicate: ∫_0^t is infinite for some
  // finite t exactly when the mass near 0 diverges.  A partial mass that
  // merely overflows double range at large t (e.g. strong exponential growth)
  // satisfies the hypothesis and only limits the evaluable window.
  for (auto [wt, name] : {std::pair<const Weight*, const char*>{&u, "partial mass of u"},
                          {&v, "partial mass of v"},
                          {&w, "partial mass of w"}}) {
    if (wt->diverges_at_zero())
      throw AdmissibilityError(std::string(name) +
                               " is infinite for every t; hypothesis 0 < mass < inf fails");
    bool overflowed = false;
    bool seen_positive = false;
    for (int k = 0; k < 64 && !overflowed; ++k) {
      double t = std::pow(10.0, -6.0 + 12.0 * k / 63.0);
      ExtendedValue x = wt->from_zero(t);
      if (x.is_infinite()) overflowed = true;
      else if (!x.is_zero()) seen_positive = true;
    }
    if (overflowed) {
      out.warnings.push_back(std::string(name) +
                             " exceeds double range within the probe window; "
                             "evaluation saturates at large t");
      seen_positive = true;
    }
    if (!seen_positive && wt == &v)
      throw AdmissibilityError("partial mass of v is zero on the whole grid; "
                               "hypothesis 0 < mass < inf fails");
  }

  const double pprime = p / (p - 1.0);
  Weight vd = v.power(1.0 - pprime);
  auto sigma = [&](double z) { return vd.tail(z); };
  std::vector<double> anchors = detail::merged_anchors(u, v, w);
  ScanOptions inner = detail::inner_scan_options();

  auto G = [&](double t) -> ExtendedValue {
    auto integrand = [&](double s) {
      if (!(s < t)) return 0.0;  // quadrature may touch the endpoint itself
      LogProduct lp;
      lp.mul_value(w(s));
      lp.mul_pow(u.ess_sup(s, t).value(), q);
      return lp.value();
    };
    return improper_integral(integrand, detail::merged_anchors(u, w), {}, 0.0, t);
  };

  if (p_le_q) {
    auto obj = [&](double t) {
      LogProduct lp;
      lp.mul_pow(G(t).value(), 1.0 / q);
      lp.mul_pow(sigma(t).value(), 1.0 / pprime);
      return lp.value();
    };
    ExtendedValue v6 = maximize_scan(obj, 0.0, kInf).value;
    out.terms["I6"] = v6;
    out.value = v6;
    return out;
  }

  const double r = p * q / (p - q);
  auto integrand7 = [&](double t) {
    auto sobj = [&](double s) {
      LogProduct lp;
      lp.mul_pow(u(s), r);
      lp.mul_pow(sigma(s).value(), r / pprime);
      return lp.value();
    };
    ExtendedValue sup = maximize_scan(sobj, t, kInf, inner).value;
    LogProduct lp;
    lp.mul_pow(w.from_zero(t).value(), r / p);
    lp.mul_value(w(t));
    lp.mul_pow(sup.value(), 1.0);
    return lp.value();
  };
  auto integrand8 = [&](double t) {
    auto zobj = [&](double z) {
      LogProduct lp;
      lp.mul_pow(u(z), q);
      lp.mul_pow(sigma(z).value(), r / pprime);
      return lp.value();
    };
    ExtendedValue sup = maximize_scan(zobj, t, kInf, inner).value;
    LogProduct lp;
    lp.mul_pow(G(t).value(), r / p);
    lp.mul_value(w(t));
    lp.mul_pow(sup.value(), 1.0);
    return lp.value();
  };
  ExtendedValue J7 = improper_integral(integrand7, anchors);
  ExtendedValue J8 = improper_integral(integrand8, anchors);
  ExtendedValue a = J7.is_infinite() ? ExtendedValue::infinity()
                                     : ExtendedValue(xpow(J7.value(), 1.0 / r));
  ExtendedValue b = J8.is_infinite() ? ExtendedValue::infinity()
                                     : ExtendedValue(xpow(J8.value(), 1.0 / r));
  out.terms["I7"] = a;
  out.terms["I8"] = b;
  out.value = a + b;
  return out;
}

}  // namespace cesembed
