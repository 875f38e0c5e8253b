#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdq/weyl.hpp"

namespace mdq {

/// Raised when an identity that the adopted conventions guarantee fails.
class ConventionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity checked exactly: passes when the residuals are all zero (or,
/// for a negative control, when at least one is nonzero).
struct SymbolicCheck {
  std::string id;
  std::string anchor;
  long degree = -1;  // truncation bound, -1 when not truncated
  std::vector<WeylElement> residuals;
  bool expect_zero = true;

  bool is_zero() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const WeylElement& r) { return r.is_zero(); });
  }
  bool passed() const { return is_zero() == expect_zero; }

  std::size_t nonzero_terms() const {
    std::size_t n = 0;
    for (const auto& r : residuals) n += r.size();
    return n;
  }

  std::string summary() const {
    if (is_zero()) return "0";
    return "nonzero (" + std::to_string(nonzero_terms()) + " terms)";
  }
};

/// A floating-point check: passes when value < tolerance (or, for a bound
/// check such as C >= 25, when `satisfied` is set by the producer).
struct NumericCheck {
  std::string id;
  std::string anchor;
  double tolerance = 0.0;
  double value = 0.0;
  bool satisfied = false;

  static NumericCheck below(std::string id, std::string anchor, double value, double tol) {
    NumericCheck c{std::move(id), std::move(anchor), tol, value, false};
    c.satisfied = std::isfinite(value) && value < tol;
    return c;
  }

  bool passed() const { return satisfied; }
};

}  // namespace mdq
