#include "framebound/rational.hpp"

#include "framebound/errors.hpp"

#include <cctype>
#include <cmath>

namespace framebound {

std::string rational_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

Rational rational_from_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  BigInt scale = 1;
  bool seen_digit = false;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_dot) {
        throw parse_error("not a decimal literal: '" + std::string(text) + "'");
      }
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      if (seen_dot) {
        scale *= 10;
      }
      seen_digit = true;
    } else if (c == '/') {
      // allow explicit fractions like "3/8"
      const Rational num = rational_from_decimal(text.substr(0, i));
      const Rational den = rational_from_decimal(text.substr(i + 1));
      if (den == 0) {
        throw parse_error("zero denominator in '" + std::string(text) + "'");
      }
      return num / den;
    } else {
      throw parse_error("not a decimal literal: '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) {
    throw parse_error("not a decimal literal: '" + std::string(text) + "'");
  }
  Rational value(digits, scale);
  return negative ? -value : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw domain_error("cannot convert non-finite double to rational");
  }
  return Rational(x);
}

BigInt factorial(int n) {
  if (n < 0) {
    throw domain_error("factorial of negative integer");
  }
  BigInt result = 1;
  for (int k = 2; k <= n; ++k) {
    result *= k;
  }
  return result;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return result;
}

Rational rising_factorial_half(int d, int p) {
  if (d < 1 || p < 0) {
    throw domain_error("rising_factorial_half requires d >= 1, p >= 0");
  }
  BigInt num = 1;
  for (int i = 0; i < p; ++i) {
    num *= d + 2 * i;
  }
  BigInt den = BigInt(1) << p;
  return Rational(num, den);
}

} // namespace framebound
