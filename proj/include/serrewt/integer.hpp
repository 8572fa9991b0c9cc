#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace serrewt {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer ipow(long long base, unsigned exp) {
  Integer result = 1;
  Integer b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    b *= b;
    exp >>= 1U;
  }
  return result;
}

/// Representative of a modulo m in [0, m); m must be positive.
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline long long floor_mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

/// p-adic valuation of a nonzero integer.
inline unsigned valuation(Integer x, long long p) {
  unsigned v = 0;
  if (x < 0) x = -x;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline bool is_prime(long long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (long long d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

inline std::string to_string(const Integer& x) { return x.str(); }

/// Lowest-terms "num/den".
inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" + boost::multiprecision::denominator(x).str();
}

inline long long to_ll(const Integer& x) { return x.convert_to<long long>(); }

}  // namespace serrewt
