#pragma once

// Error taxonomy shared across the library.  The CLI maps these onto its
// exit codes; library users can catch them individually.

#include <stdexcept>
#include <string>

namespace cesembed {

// Parameter combination outside the characterized regimes (q <= p side,
// degenerate exponents, p <= 1 where p > 1 is required, and so on).
struct UnsupportedRegimeError : std::runtime_error {
  explicit UnsupportedRegimeError(const std::string& what)
      : std::runtime_error(what) {}
};

// A weight fails a structural precondition (e.g. it must be strictly
// positive because it is inverted).
struct DegenerateWeightError : std::runtime_error {
  explicit DegenerateWeightError(const std::string& what)
      : std::runtime_error(what) {}
};

// A theorem hypothesis fails hard where an operation cannot proceed at all
// (report-style admissibility checks do not throw this; they record).
struct AdmissibilityError : std::runtime_error {
  explicit AdmissibilityError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace cesembed
