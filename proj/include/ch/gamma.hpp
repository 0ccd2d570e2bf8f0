// Gamma-function ratios and small combinatorial helpers.
//
// Ratios whose arguments differ by a nonnegative integer are evaluated as
// rising factorials, which stays finite through pole cancellation; the
// generic path goes through lgamma with explicit sign tracking.
#pragma once

#include <cmath>
#include <limits>

#include "ch/errors.hpp"
#include "ch/types.hpp"

namespace ch {

inline bool is_nonpositive_integer(Real x, Real tol = 1e-9) {
  return x < 0.5 && std::abs(x - std::round(x)) < tol;
}

/// Sign of Gamma(x) for non-pole x: negative exactly on (-1,0), (-3,-2), ...
inline int gamma_sign(Real x) {
  if (x > 0.0) return 1;
  return (static_cast<long long>(std::floor(x)) % 2 == 0) ? 1 : -1;
}

/// Gamma(y + n) / Gamma(y) = y (y+1) ... (y+n-1), n >= 0. Finite for every
/// real y, including nonpositive integers.
inline Real rising_factorial(Real y, int n) {
  Real prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= y + i;
  return prod;
}

/// Gamma(x) / Gamma(y). Takes the rising-factorial path when x - y is a
/// nonnegative integer; otherwise evaluates exp(lgamma(x) - lgamma(y)) with
/// reflection-formula sign handling for negative non-integer arguments.
inline Real gamma_ratio(Real x, Real y) {
  const Real diff = x - y;
  const Real rounded = std::round(diff);
  if (rounded >= 0.0 && std::abs(diff - rounded) < 1e-9) {
    return rising_factorial(y, static_cast<int>(rounded));
  }
  if (is_nonpositive_integer(x)) {
    throw Error(errc::pole, "Gamma ratio has an un-cancelled pole at x = " + std::to_string(x));
  }
  if (is_nonpositive_integer(y)) {
    // Gamma(y) blows up, the ratio collapses to zero.
    return 0.0;
  }
  const Real value = std::exp(std::lgamma(x) - std::lgamma(y));
  return value * gamma_sign(x) * gamma_sign(y);
}

/// Binomial coefficient as a double; exact for the small arguments used here.
inline Real binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  Real result = 1.0;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return std::round(result);
}

/// ln Beta(a, b) companion: Beta(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
inline Real beta_function(Real a, Real b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline Real factorial(int n) { return rising_factorial(1.0, n); }

}  // namespace ch
