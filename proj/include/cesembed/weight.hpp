#pragma once

// Weight model on the half-line (0, inf).
//
// Two representations:
//
//  * Analytic — a sorted list of disjoint segments, each carrying
//        c * t^alpha * (1+t)^beta * exp(gamma*t + gamma_inv/t)
//    on (from, to).  The family is closed under pointwise powers and under
//    the t -> 1/t change of variables used by the Copson transform, and its
//    integral divergence at both endpoints is decidable exactly from the
//    exponents.  Outside all segments the weight is zero; raising a zero
//    region to a negative power yields an explicit infinite segment.
//
//  * Tabulated — positive samples (t_i, y_i), interpolated log-linearly
//    (linear fallback when a cell endpoint is zero; a cell with an infinite
//    endpoint evaluates to infinity throughout, the conservative choice),
//    extended beyond the sampled range by power laws fitted to the boundary
//    log-log slopes.  Powers act on the samples; log-linear interpolation
//    commutes with powers on positive cells, so the representations agree.
//
// Integrals go through a lazily built CumulativeFunction shared by all
// copies of a weight, with endpoint divergence supplied exactly from the
// representation instead of heuristics.

#include <cmath>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cesembed/extended_value.hpp"
#include "cesembed/quadrature.hpp"

namespace cesembed {

struct WeightFormatError : std::runtime_error {
  explicit WeightFormatError(const std::string& what) : std::runtime_error(what) {}
};

struct AnalyticSegment {
  double c = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double gamma_inv = 0.0;
  double from = 0.0;
  double to = kInf;

  double log_value(double t) const {
    if (c == 0.0) return -kInf;
    if (std::isinf(c)) return kInf;
    return std::log(c) + alpha * std::log(t) + beta * std::log1p(t) +
           gamma * t + gamma_inv / t;
  }

  double value(double t) const {
    if (c == 0.0) return 0.0;
    if (std::isinf(c)) return kInf;
    // Keep c out of the exp round trip so constant segments are exact.
    double e = alpha * std::log(t) + beta * std::log1p(t) + gamma * t + gamma_inv / t;
    return c * std::exp(e);
  }

  // Pointwise limit as t -> 0+ (used for suprema on intervals touching 0).
  double limit_at_zero() const {
    if (c == 0.0) return 0.0;
    if (std::isinf(c)) return kInf;
    if (gamma_inv > 0.0) return kInf;
    if (gamma_inv < 0.0) return 0.0;
    if (alpha < 0.0) return kInf;
    if (alpha > 0.0) return 0.0;
    return c;
  }

  // Pointwise limit as t -> inf.
  double limit_at_inf() const {
    if (c == 0.0) return 0.0;
    if (std::isinf(c)) return kInf;
    if (gamma > 0.0) return kInf;
    if (gamma < 0.0) return 0.0;
    double s = alpha + beta;
    if (s > 0.0) return kInf;
    if (s < 0.0) return 0.0;
    return c;
  }

  // Exact integral divergence tests; meaningful when the segment reaches the
  // endpoint in question.
  bool mass_diverges_at_zero() const {
    if (c == 0.0) return false;
    if (std::isinf(c)) return true;
    return gamma_inv > 0.0 || (gamma_inv == 0.0 && alpha <= -1.0);
  }
  bool mass_diverges_at_inf() const {
    if (c == 0.0) return false;
    if (std::isinf(c)) return true;
    return gamma > 0.0 || (gamma == 0.0 && alpha + beta >= -1.0);
  }
};

class Weight {
 public:
  enum class Kind { Analytic, Tabulated };

  Weight() { *this = constant(0.0); }

  static Weight analytic(std::vector<AnalyticSegment> segs) {
    Weight w{RawTag{}};
    w.kind_ = Kind::Analytic;
    w.segs_ = std::move(segs);
    w.ts_.clear(); w.ys_.clear();
    w.normalize_and_validate();
    w.cache_ = std::make_shared<Cache>();
    return w;
  }

  static Weight tabulated(std::vector<std::pair<double, double>> samples) {
    Weight w{RawTag{}};
    w.kind_ = Kind::Tabulated;
    w.segs_.clear();
    for (auto& [t, y] : samples) { w.ts_.push_back(t); w.ys_.push_back(y); }
    w.normalize_and_validate();
    w.cache_ = std::make_shared<Cache>();
    return w;
  }

  static Weight constant(double c) {
    return analytic({AnalyticSegment{c, 0, 0, 0, 0, 0, kInf}});
  }

  static Weight power_law(double c, double alpha) {
    return analytic({AnalyticSegment{c, alpha, 0, 0, 0, 0, kInf}});
  }

  Kind kind() const { return kind_; }
  const std::vector<AnalyticSegment>& segments() const { return segs_; }
  const std::vector<double>& sample_points() const { return ts_; }
  const std::vector<double>& sample_values() const { return ys_; }

  bool is_zero() const {
    if (kind_ == Kind::Analytic) {
      for (const auto& s : segs_) if (s.c != 0.0) return false;
      return true;
    }
    for (double y : ys_) if (y != 0.0) return false;
    return true;
  }

  double operator()(double t) const {
    if (!(t > 0.0) || std::isinf(t)) return 0.0;
    if (kind_ == Kind::Analytic) {
      const AnalyticSegment* s = segment_at(t);
      return s ? s->value(t) : 0.0;
    }
    return tab_value(t);
  }

  // log of the value (-inf for zero, +inf for infinite); overflow-free.
  double log_value(double t) const {
    if (!(t > 0.0) || std::isinf(t)) return -kInf;
    if (kind_ == Kind::Analytic) {
      const AnalyticSegment* s = segment_at(t);
      return s ? s->log_value(t) : -kInf;
    }
    double v = tab_value(t);
    if (v == 0.0) return -kInf;
    if (std::isinf(v)) return kInf;
    return std::log(v);
  }

  // Pointwise power w^r.  Zero regions with r < 0 become explicit infinite
  // segments (value +inf), which propagate to infinite integrals.
  Weight power(double r) const {
    if (r == 1.0) return *this;
    if (kind_ == Kind::Analytic) {
      std::vector<AnalyticSegment> out;
      double covered = 0.0;
      for (const auto& s : segs_) {
        if (r < 0.0 && s.from > covered)
          out.push_back({kInf, 0, 0, 0, 0, covered, s.from});
        AnalyticSegment p;
        p.c = xpow(s.c, r);
        p.alpha = (s.c == 0.0 || std::isinf(s.c)) ? 0.0 : s.alpha * r;
        p.beta = (s.c == 0.0 || std::isinf(s.c)) ? 0.0 : s.beta * r;
        p.gamma = (s.c == 0.0 || std::isinf(s.c)) ? 0.0 : s.gamma * r;
        p.gamma_inv = (s.c == 0.0 || std::isinf(s.c)) ? 0.0 : s.gamma_inv * r;
        p.from = s.from;
        p.to = s.to;
        out.push_back(p);
        covered = s.to;
      }
      if (r < 0.0 && covered < kInf)
        out.push_back({kInf, 0, 0, 0, 0, covered, kInf});
      if (r < 0.0 && out.empty())
        out.push_back({kInf, 0, 0, 0, 0, 0.0, kInf});
      return analytic(std::move(out));
    }
    std::vector<std::pair<double, double>> samples;
    samples.reserve(ts_.size());
    for (std::size_t i = 0; i < ts_.size(); ++i)
      samples.emplace_back(ts_[i], xpow(ys_[i], r));
    return tabulated(std::move(samples));
  }

  // --- integrals (shared lazy cumulative table) ---
  ExtendedValue integrate(double a, double b) const { return table().integrate(a, b); }
  ExtendedValue between(double a, double b) const { return integrate(a, b); }
  ExtendedValue from_zero(double b) const { return table().from_zero(b); }
  ExtendedValue tail(double a) const { return a == kInf ? ExtendedValue(0.0) : table().tail(a); }
  ExtendedValue total() const { return table().total(); }

  // Exact endpoint divergence of the integral, from the representation.
  bool diverges_at_zero() const {
    if (kind_ == Kind::Analytic) {
      for (const auto& s : segs_) {
        if (s.from < CumulativeFunction::kGridLo && std::isinf(s.c)) return true;
        if (s.from == 0.0 && s.mass_diverges_at_zero()) return true;
      }
      return false;
    }
    if (ts_.empty()) return false;
    if (std::isinf(ys_.front())) return true;
    // Fitted slopes within 1e-9 of the critical exponent -1 count as
    // divergent; that is the resolution of a log-log fit on samples.
    return ys_.front() > 0.0 && slope_lo_ <= -1.0 + 1e-9;
  }

  bool diverges_at_inf() const {
    if (kind_ == Kind::Analytic) {
      for (const auto& s : segs_) {
        if (s.to > CumulativeFunction::kGridHi && std::isinf(s.c)) return true;
        if (s.to == kInf && s.mass_diverges_at_inf()) return true;
      }
      return false;
    }
    if (ts_.empty()) return false;
    if (std::isinf(ys_.back())) return true;
    return ys_.back() > 0.0 && slope_hi_ >= -1.0 - 1e-9;
  }

  // Essential supremum over the open interval (a,b), 0 <= a < b <= inf.
  // Both representations are piecewise continuous, so the essential sup is
  // the pointwise sup with endpoint limits.
  ExtendedValue ess_sup(double a, double b) const {
    if (std::isnan(a) || std::isnan(b) || a < 0.0 || a >= b)
      throw std::invalid_argument("Weight::ess_sup: need 0 <= a < b");
    double best = 0.0;
    if (kind_ == Kind::Analytic) {
      for (const auto& s : segs_) {
        double lo = std::max(a, s.from), hi = std::min(b, s.to);
        if (lo >= hi) continue;
        best = std::max(best, segment_sup(s, lo, hi));
        if (std::isinf(best)) return ExtendedValue::infinity();
      }
      return best;
    }
    // Tabulated: interpolation is monotone between nodes and the extensions
    // are monotone power laws, so nodes plus interval endpoints suffice.
    for (std::size_t i = 0; i < ts_.size(); ++i)
      if (ts_[i] > a && ts_[i] < b) best = std::max(best, ys_[i]);
    best = std::max(best, a == 0.0 ? tab_limit_at_zero() : tab_value(a));
    best = std::max(best, b == kInf ? tab_limit_at_inf() : tab_value(b));
    if (std::isinf(best)) return ExtendedValue::infinity();
    return best;
  }

  // Positions worth resolving in quadrature grids and scans.
  std::vector<double> anchors() const {
    std::vector<double> out;
    if (kind_ == Kind::Analytic) {
      for (const auto& s : segs_) {
        if (s.from > 0.0 && std::isfinite(s.from)) out.push_back(s.from);
        if (std::isfinite(s.to)) out.push_back(s.to);
      }
    } else {
      out = ts_;
    }
    return out;
  }

  // --- JSON (document format shared with the CLI) ---
  static Weight from_json(const nlohmann::json& j) {
    if (!j.is_object())
      throw WeightFormatError("weight document must be a JSON object");
    if (j.contains("segments")) {
      if (!j["segments"].is_array() || j["segments"].empty())
        throw WeightFormatError("\"segments\" must be a non-empty array");
      std::vector<AnalyticSegment> segs;
      for (const auto& js : j["segments"]) {
        if (!js.is_object())
          throw WeightFormatError("each segment must be an object");
        AnalyticSegment s;
        s.c = require_number(js, "c");
        s.alpha = optional_number(js, "alpha", 0.0);
        s.beta = optional_number(js, "beta", 0.0);
        s.gamma = optional_number(js, "gamma", 0.0);
        s.gamma_inv = optional_number(js, "gamma_inv", 0.0);
        s.from = optional_number(js, "from", 0.0);
        s.to = read_upper(js);
        if (!(s.c >= 0.0) || std::isinf(s.c))
          throw WeightFormatError("segment coefficient c must be finite and >= 0");
        segs.push_back(s);
      }
      return analytic(std::move(segs));
    }
    if (j.contains("samples")) {
      if (!j["samples"].is_array() || j["samples"].size() < 1)
        throw WeightFormatError("\"samples\" must be a non-empty array");
      std::vector<std::pair<double, double>> samples;
      for (const auto& row : j["samples"]) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
          throw WeightFormatError("each sample must be a [t, value] pair of numbers");
        samples.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      return tabulated(std::move(samples));
    }
    throw WeightFormatError("weight document needs a \"segments\" or \"samples\" key");
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (kind_ == Kind::Analytic) {
      j["segments"] = nlohmann::json::array();
      for (const auto& s : segs_) {
        nlohmann::json js{{"c", s.c},       {"alpha", s.alpha},
                          {"beta", s.beta}, {"gamma", s.gamma},
                          {"gamma_inv", s.gamma_inv}, {"from", s.from}};
        js["to"] = std::isinf(s.to) ? nlohmann::json() : nlohmann::json(s.to);
        j["segments"].push_back(js);
      }
    } else {
      j["samples"] = nlohmann::json::array();
      for (std::size_t i = 0; i < ts_.size(); ++i)
        j["samples"].push_back({ts_[i], ys_[i]});
    }
    return j;
  }

  static Weight load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WeightFormatError("cannot open weight file: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw WeightFormatError("invalid JSON in " + path + ": " + e.what());
    }
    try {
      return from_json(j);
    } catch (const WeightFormatError& e) {
      throw WeightFormatError(path + ": " + e.what());
    }
  }

 private:
  struct RawTag {};
  explicit Weight(RawTag) {}

  struct Cache {
    std::once_flag once;
    std::unique_ptr<const CumulativeFunction> table;
  };

  static double require_number(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
      throw WeightFormatError(std::string("segment key \"") + key +
                              "\" is required and must be a number");
    return j[key].get<double>();
  }

  static double optional_number(const nlohmann::json& j, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    if (j[key].is_null()) return dflt;
    if (!j[key].is_number())
      throw WeightFormatError(std::string("segment key \"") + key + "\" must be a number");
    return j[key].get<double>();
  }

  static double read_upper(const nlohmann::json& j) {
    if (!j.contains("to") || j["to"].is_null()) return kInf;
    if (j["to"].is_string()) {
      if (j["to"].get<std::string>() == "inf") return kInf;
      throw WeightFormatError("segment key \"to\" must be a number, null, or \"inf\"");
    }
    if (!j["to"].is_number())
      throw WeightFormatError("segment key \"to\" must be a number, null, or \"inf\"");
    return j["to"].get<double>();
  }

  void normalize_and_validate() {
    if (kind_ == Kind::Analytic) {
      std::sort(segs_.begin(), segs_.end(),
                [](const AnalyticSegment& a, const AnalyticSegment& b) {
                  return a.from < b.from;
                });
      double prev_end = 0.0;
      for (const auto& s : segs_) {
        if (std::isnan(s.c) || std::isnan(s.alpha) || std::isnan(s.beta) ||
            std::isnan(s.gamma) || std::isnan(s.gamma_inv))
          throw WeightFormatError("segment parameters must not be NaN");
        if (s.c < 0.0)
          throw WeightFormatError("segment coefficient c must be >= 0");
        if (!(s.from >= 0.0) || !(s.to > s.from))
          throw WeightFormatError("segment interval must satisfy 0 <= from < to");
        if (s.from < prev_end)
          throw WeightFormatError("segments must not overlap");
        prev_end = s.to;
      }
      return;
    }
    if (ts_.empty()) throw WeightFormatError("tabulated weight needs at least one sample");
    for (std::size_t i = 0; i < ts_.size(); ++i) {
      if (!(ts_[i] > 0.0) || !std::isfinite(ts_[i]))
        throw WeightFormatError("sample positions must be finite and > 0");
      if (std::isnan(ys_[i]) || ys_[i] < 0.0)
        throw WeightFormatError("sample values must be >= 0");
      if (i > 0 && !(ts_[i] > ts_[i - 1]))
        throw WeightFormatError("sample positions must be strictly increasing");
    }
    slope_lo_ = boundary_slope(true);
    slope_hi_ = boundary_slope(false);
  }

  // Log-log slope of the first/last sample cell with positive values;
  // zero (constant extension) when undefined.
  double boundary_slope(bool low) const {
    if (ts_.size() < 2) return 0.0;
    std::size_t i0 = low ? 0 : ts_.size() - 2;
    double y0 = ys_[i0], y1 = ys_[i0 + 1];
    if (!(y0 > 0.0) || !(y1 > 0.0) || std::isinf(y0) || std::isinf(y1)) return 0.0;
    return (std::log(y1) - std::log(y0)) / (std::log(ts_[i0 + 1]) - std::log(ts_[i0]));
  }

  const AnalyticSegment* segment_at(double t) const {
    for (const auto& s : segs_)
      if (t >= s.from && t < s.to) return &s;
    return nullptr;
  }

  double tab_value(double t) const {
    if (t <= ts_.front()) {
      double y = ys_.front();
      if (y == 0.0) return 0.0;
      if (std::isinf(y)) return kInf;
      return y * std::pow(t / ts_.front(), slope_lo_);
    }
    if (t >= ts_.back()) {
      double y = ys_.back();
      if (y == 0.0) return 0.0;
      if (std::isinf(y)) return kInf;
      return y * std::pow(t / ts_.back(), slope_hi_);
    }
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts_.begin()) - 1;
    double t0 = ts_[i], t1 = ts_[i + 1], y0 = ys_[i], y1 = ys_[i + 1];
    if (std::isinf(y0) || std::isinf(y1)) return kInf;
    if (y0 > 0.0 && y1 > 0.0) {
      double s = (std::log(t) - std::log(t0)) / (std::log(t1) - std::log(t0));
      return std::exp((1.0 - s) * std::log(y0) + s * std::log(y1));
    }
    double s = (t - t0) / (t1 - t0);
    return std::max(0.0, (1.0 - s) * y0 + s * y1);
  }

  double tab_limit_at_zero() const {
    double y = ys_.front();
    if (y == 0.0) return 0.0;
    if (std::isinf(y)) return kInf;
    if (slope_lo_ < 0.0) return kInf;
    if (slope_lo_ > 0.0) return 0.0;
    return y;
  }

  double tab_limit_at_inf() const {
    double y = ys_.back();
    if (y == 0.0) return 0.0;
    if (std::isinf(y)) return kInf;
    if (slope_hi_ > 0.0) return kInf;
    if (slope_hi_ < 0.0) return 0.0;
    return y;
  }

  // Sup of one analytic segment over [lo, hi] ∩ (from, to): endpoint values
  // or limits, plus interior critical points of the log-derivative
  //   g(t) = alpha/t + beta/(1+t) + gamma - gamma_inv/t^2,
  // located by sign changes on a log-spaced sample and refined by bisection.
  double segment_sup(const AnalyticSegment& s, double lo, double hi) const {
    if (s.c == 0.0) return 0.0;
    if (std::isinf(s.c)) return kInf;
    double best = 0.0;
    best = std::max(best, lo == 0.0 ? s.limit_at_zero() : s.value(lo));
    best = std::max(best, hi == kInf ? s.limit_at_inf() : s.value(hi));
    if (std::isinf(best)) return best;
    auto g = [&](double t) {
      return s.alpha / t + s.beta / (1.0 + t) + s.gamma - s.gamma_inv / (t * t);
    };
    double a = std::max(lo, 1e-15), b = std::min(hi, 1e15);
    if (a >= b) return best;
    const int n = 64;
    double la = std::log(a), lb = std::log(b);
    double prev_t = a, prev_g = g(a);
    for (int k = 1; k <= n; ++k) {
      double t = std::exp(la + (lb - la) * k / n);
      double gt = g(t);
      if ((prev_g > 0.0) != (gt > 0.0)) {
        double x0 = prev_t, x1 = t;
        for (int it = 0; it < 80; ++it) {
          double mid = std::sqrt(x0 * x1);
          if ((g(mid) > 0.0) == (prev_g > 0.0)) x0 = mid; else x1 = mid;
        }
        best = std::max(best, s.value(std::sqrt(x0 * x1)));
      }
      prev_t = t;
      prev_g = gt;
    }
    return best;
  }

  const CumulativeFunction& table() const {
    std::call_once(cache_->once, [this] {
      EndpointHints hints;
      hints.diverges_at_zero = diverges_at_zero();
      hints.diverges_at_inf = diverges_at_inf();
      // Capture the evaluation data by value so the table is self-contained;
      // drop the copy's cache handle to avoid an ownership cycle (pointwise
      // evaluation never touches the table).
      Weight self = *this;
      self.cache_ = nullptr;
      cache_->table = std::make_unique<CumulativeFunction>(
          [self = std::move(self)](double t) { return self(t); }, anchors(), hints);
    });
    return *cache_->table;
  }

  Kind kind_ = Kind::Analytic;
  std::vector<AnalyticSegment> segs_;
  std::vector<double> ts_, ys_;
  double slope_lo_ = 0.0, slope_hi_ = 0.0;
  std::shared_ptr<Cache> cache_;
};

}  // namespace cesembed
