#include "critbound/log_value.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace critbound {

LogValue LogValue::from_exact(mpz_class value) {
  const double ln = ln_big(value);
  return LogValue{ln, std::move(value)};
}

double ln_big(const mpz_class& value) {
  if (sgn(value) <= 0) throw std::domain_error("ln_big of a non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

std::size_t decimal_digits(const mpz_class& value) {
  if (sgn(value) == 0) return 1;
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t digits = mpz_sizeinbase(value.get_mpz_t(), 10);
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, digits - 1);
  if (abs(value) < bound) --digits;
  return digits;
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma needs a positive argument");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double ln_factorial(std::int64_t n) {
  if (n < 0) throw std::domain_error("factorial of a negative integer");
  if (n < 2) return 0.0;
  return ln_gamma(static_cast<double>(n) + 1.0);
}

}  // namespace critbound
