#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace framebound {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "a/b", or "a" when the denominator is 1.
std::string rational_string(const Rational& r);

/// Exact rational value of a decimal literal such as "-2.25" or "3".
Rational rational_from_decimal(std::string_view text);

/// Exact rational image of a finite double (binary fraction).
Rational rational_from_double(double x);

BigInt factorial(int n);
BigInt binomial(int n, int k);

/// Rising factorial (d/2)_p = (d/2)(d/2+1)...(d/2+p-1), exact.
Rational rising_factorial_half(int d, int p);

} // namespace framebound
