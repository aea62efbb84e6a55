#pragma once

// Exponent parameters and regime classification.
//
// The embedding constant is characterized by different functional sets
// depending on where (p, q, theta) sits relative to the boundaries p = 1,
// q = p, q = 1, theta = p, theta = q.  Sitting exactly on a boundary changes
// the answer, so comparisons prefer exact rational values (available when a
// parameter was written as a fraction or short decimal) and otherwise use a
// tight floating-point tolerance.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cesembed/rational.hpp"

namespace cesembed {

struct ParamValue {
  double value = 0.0;
  std::optional<Rational> exact;

  static ParamValue of(double v) { return {v, std::nullopt}; }

  static ParamValue of(const Rational& r) { return {r.to_double(), r}; }

  // CLI entry: keep the exact rational whenever the text admits one.
  static ParamValue parse(const std::string& text) {
    if (auto r = Rational::parse(text)) return of(*r);
    try {
      std::size_t pos = 0;
      double v = std::stod(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return of(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse parameter value: " + text);
    }
  }
};

// Three-way comparison; exact when both sides carry rationals.
inline int cmp(const ParamValue& a, const ParamValue& b) {
  if (a.exact && b.exact) {
    if (*a.exact < *b.exact) return -1;
    if (*b.exact < *a.exact) return 1;
    return 0;
  }
  double eps = 1e-12 * std::max({1.0, std::abs(a.value), std::abs(b.value)});
  if (a.value < b.value - eps) return -1;
  if (a.value > b.value + eps) return 1;
  return 0;
}

inline int cmp(const ParamValue& a, double b) { return cmp(a, ParamValue{b, Rational(0, 1)}); }

// cmp against small integer constants keeps exactness on both sides.
inline int cmp1(const ParamValue& a) { return cmp(a, ParamValue{1.0, Rational(1, 1)}); }

struct Parameters {
  ParamValue p, q, theta;

  Parameters(ParamValue p_, ParamValue q_, ParamValue t_) : p(p_), q(q_), theta(t_) {
    validate();
  }
  Parameters(double p_, double q_, double t_)
      : Parameters(ParamValue::of(p_), ParamValue::of(q_), ParamValue::of(t_)) {}

  void validate() const {
    for (const ParamValue* v : {&p, &q, &theta})
      if (!(v->value > 0.0) || !std::isfinite(v->value))
        throw std::invalid_argument("parameters p, q, theta must be finite and > 0");
  }
};

enum class Regime {
  T1a, T1b, T2,
  T3a, T3b, T3c, T3d,
  T4a, T4b,
  Trivial_p_gt_1,
  Unsupported_q_le_p,
  // Defensive fallbacks: unreachable under the partition below, kept so a
  // future tree edit fails loudly instead of silently misrouting.
  KnownElsewhere_p_eq_q_or_theta_eq_1,
  Unsupported_other,
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::T1a: return "T1a";
    case Regime::T1b: return "T1b";
    case Regime::T2: return "T2";
    case Regime::T3a: return "T3a";
    case Regime::T3b: return "T3b";
    case Regime::T3c: return "T3c";
    case Regime::T3d: return "T3d";
    case Regime::T4a: return "T4a";
    case Regime::T4b: return "T4b";
    case Regime::Trivial_p_gt_1: return "Trivial_p_gt_1";
    case Regime::Unsupported_q_le_p: return "Unsupported_q_le_p";
    case Regime::KnownElsewhere_p_eq_q_or_theta_eq_1:
      return "KnownElsewhere_p_eq_q_or_theta_eq_1";
    case Regime::Unsupported_other: return "Unsupported_other";
  }
  return "?";
}

inline bool is_theorem_regime(Regime r) {
  switch (r) {
    case Regime::T1a: case Regime::T1b: case Regime::T2:
    case Regime::T3a: case Regime::T3b: case Regime::T3c: case Regime::T3d:
    case Regime::T4a: case Regime::T4b:
      return true;
    default:
      return false;
  }
}

// Decision tree.  Every positive triple lands in exactly one of:
// Trivial_p_gt_1, Unsupported_q_le_p, or the nine characterized regimes.
inline Regime classify(const Parameters& prm) {
  const ParamValue& p = prm.p;
  const ParamValue& q = prm.q;
  const ParamValue& th = prm.theta;

  if (cmp1(p) > 0) return Regime::Trivial_p_gt_1;       // p > 1
  if (cmp(q, p) <= 0) return Regime::Unsupported_q_le_p;  // q <= p <= 1

  if (cmp1(p) == 0) {
    // p = 1, q > 1.
    if (cmp1(th) <= 0) return Regime::T2;
    if (cmp(th, q) <= 0) return Regime::T4a;  // 1 < theta <= q
    return Regime::T4b;                       // theta > q
  }

  // p < 1, q > p.
  if (cmp(th, p) <= 0) {
    return cmp1(q) >= 0 ? Regime::T1a : Regime::T1b;
  }
  // theta > p.
  if (cmp1(q) >= 0) {
    return cmp(q, th) >= 0 ? Regime::T3a : Regime::T3b;
  }
  return cmp(q, th) >= 0 ? Regime::T3c : Regime::T3d;
}

// Indices of the functionals characterizing each regime (upper == lower up
// to regime-independent constants; any one of them is two-sided).
inline std::vector<int> formula_set(Regime r) {
  switch (r) {
    case Regime::T1a: return {1};
    case Regime::T1b: return {2};
    case Regime::T2:  return {3};
    case Regime::T3a: return {4, 5};
    case Regime::T3b: return {4, 6, 7};
    case Regime::T3c: return {5, 8, 9};
    case Regime::T3d: return {7, 8, 10};
    case Regime::T4a: return {11, 12};
    case Regime::T4b: return {11, 13, 14};
    default: return {};
  }
}

}  // namespace cesembed
