#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>

namespace critbound {

/// A positive quantity carried by its natural logarithm, with the exact
/// integer attached when it was small enough to materialise.
struct LogValue {
  double ln = 0.0;
  std::optional<mpz_class> exact;

  static LogValue from_ln(double ln) { return LogValue{ln, std::nullopt}; }
  static LogValue from_exact(mpz_class value);
};

/// Natural log of a positive big integer, accurate to double precision at any
/// size. Throws std::domain_error for non-positive input.
double ln_big(const mpz_class& value);

/// Number of decimal digits of |value| (0 has one digit).
std::size_t decimal_digits(const mpz_class& value);

/// ln Gamma(x) for x > 0, reentrant.
double ln_gamma(double x);

/// ln(n!) for n >= 0.
double ln_factorial(std::int64_t n);

}  // namespace critbound
