#include "gtzw/exact.hpp"

#include <algorithm>

#include "gtzw/errors.hpp"

namespace gtzw {

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(char('0' + int(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  BigInt result = 1;
  for (long k = 2; k <= n; ++k) result *= k;
  return result;
}

Rational recip_gamma_exact(long n) {
  if (n <= 0) return Rational(0);
  return Rational(BigInt(1), factorial(n - 1));
}

}  // namespace gtzw
