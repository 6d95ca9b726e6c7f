#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace gtzw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using u128 = unsigned __int128;

std::string to_string(u128 value);

/// Factorial as an exact integer; throws DomainError for n < 0.
BigInt factorial(long n);

/// 1/Gamma(n) for integer n: 1/(n-1)! for n >= 1, exactly 0 otherwise.
Rational recip_gamma_exact(long n);

}  // namespace gtzw
