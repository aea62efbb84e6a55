#pragma once

// Extended non-negative values: [0, +inf] with the arithmetic conventions
// used throughout the library: 0/0 = 0, 0 * inf = 0, x/inf = 0, x/0 = inf
// for x > 0.  Backed by a plain double whose only allowed non-finite state
// is +infinity; NaN and negatives are rejected at construction.

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cesembed {

class ExtendedValue {
 public:
  ExtendedValue() : v_(0.0) {}

  // Implicit conversion from double is deliberate: the numeric kernels work
  // in double and promote to ExtendedValue at API boundaries.
  ExtendedValue(double v) : v_(v) {
    if (std::isnan(v_) || v_ < 0.0) {
      throw std::invalid_argument(
          "ExtendedValue: value must be non-negative and not NaN (got " +
          std::to_string(v) + ")");
    }
  }

  static ExtendedValue infinity() {
    return ExtendedValue(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const { return std::isinf(v_); }
  bool is_finite() const { return !std::isinf(v_); }
  bool is_zero() const { return v_ == 0.0; }

  // Raw double; +inf when infinite.
  double value() const { return v_; }

  // Finite value or throw: for callers that must not silently use inf.
  double finite_value() const {
    if (is_infinite()) throw std::domain_error("ExtendedValue: value is infinite");
    return v_;
  }

  friend bool operator==(ExtendedValue a, ExtendedValue b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtendedValue a, ExtendedValue b) { return a.v_ != b.v_; }
  friend bool operator<(ExtendedValue a, ExtendedValue b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedValue a, ExtendedValue b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedValue a, ExtendedValue b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedValue a, ExtendedValue b) { return a.v_ >= b.v_; }

  // inf + x = inf; finite addition may overflow to inf, which is accepted.
  friend ExtendedValue operator+(ExtendedValue a, ExtendedValue b) {
    return ExtendedValue(a.v_ + b.v_);
  }

  // 0 * inf = 0 (both orders); otherwise ordinary multiplication.
  friend ExtendedValue operator*(ExtendedValue a, ExtendedValue b) {
    if ((a.v_ == 0.0 && b.is_infinite()) || (b.v_ == 0.0 && a.is_infinite()))
      return ExtendedValue(0.0);
    return ExtendedValue(a.v_ * b.v_);
  }

  // 0/0 = 0, x/0 = inf (x > 0), x/inf = 0 (x finite), inf/inf = inf
  // (the last case is conservative and is pre-screened by callers that
  // need a different convention, e.g. the oracle's ratio).
  friend ExtendedValue operator/(ExtendedValue a, ExtendedValue b) {
    if (b.v_ == 0.0) return a.v_ == 0.0 ? ExtendedValue(0.0) : infinity();
    if (b.is_infinite()) return a.is_infinite() ? infinity() : ExtendedValue(0.0);
    return ExtendedValue(a.v_ / b.v_);
  }

  friend std::ostream& operator<<(std::ostream& os, ExtendedValue x) {
    if (x.is_infinite()) return os << "inf";
    return os << x.v_;
  }

 private:
  double v_;
};

// x^e on [0, inf] with the conventions: x^0 = 1 (including 0^0 and inf^0),
// 0^e = 0 for e > 0 and inf for e < 0, inf^e = inf for e > 0 and 0 for
// e < 0.  Finite overflow saturates to inf.
inline double xpow(double x, double e) {
  if (e == 0.0) return 1.0;
  if (x == 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  if (std::isinf(x)) return e > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return std::pow(x, e);
}

inline ExtendedValue xpow(ExtendedValue x, double e) {
  return ExtendedValue(xpow(x.value(), e));
}

}  // namespace cesembed
