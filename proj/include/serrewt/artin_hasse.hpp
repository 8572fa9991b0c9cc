#pragma once

// The Artin-Hasse exponential E_p(x) = exp(sum_n x^{p^n}/p^n), exactly over Q
// and reduced mod p, the latter by two independent routes.

#include <string>
#include <vector>

#include "serrewt/error.hpp"
#include "serrewt/finite_field.hpp"
#include "serrewt/integer.hpp"
#include "serrewt/laurent.hpp"

namespace serrewt {

/// c_0, ..., c_D of E_p(x), each checked to be p-integral.
inline std::vector<Rational> artin_hasse_rational(int p, int degree) {
  require(is_prime(p), ErrorCode::InvalidInput, "p must be prime");
  require(degree >= 0, ErrorCode::InvalidInput, "degree must be >= 0");
  // With g = sum x^{p^n}/p^n, k c_k = sum_i i g_i c_{k-i} and i g_i = 1 at i = p^n.
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c[0] = 1;
  for (int k = 1; k <= degree; ++k) {
    Rational acc = 0;
    for (long long pw = 1; pw <= k; pw *= p) acc += c[static_cast<std::size_t>(k - pw)];
    c[static_cast<std::size_t>(k)] = acc / k;
    if (boost::multiprecision::denominator(c[static_cast<std::size_t>(k)]) % p == 0) {
      fail(ErrorCode::IntegralityViolation,
           "coefficient " + std::to_string(k) + " = " + to_string(c[static_cast<std::size_t>(k)]) + " is not p-integral");
    }
  }
  return c;
}

namespace detail {

inline int reduce_mod_p(const Rational& r, int p) {
  const Integer num = floor_mod(boost::multiprecision::numerator(r), Integer(p));
  const Integer den = floor_mod(boost::multiprecision::denominator(r), Integer(p));
  require(den != 0, ErrorCode::IntegralityViolation, "denominator divisible by p");
  Integer inv = 1;
  for (int k = 0; k < p - 2; ++k) inv = inv * den % p;
  return static_cast<int>(num * inv % p);
}

inline int moebius(int n) {
  int mu = 1;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

/// binom(alpha, k) mod p by Lucas, alpha given by its p-adic digits.
inline int lucas_binomial(const std::vector<int>& alpha_digits, long long k, int p) {
  long long out = 1;
  for (std::size_t i = 0; k > 0; ++i, k /= p) {
    const int ki = static_cast<int>(k % p);
    const int ai = i < alpha_digits.size() ? alpha_digits[i] : 0;
    if (ki > ai) return 0;
    long long b = 1;
    for (int t = 0; t < ki; ++t) b = b * (ai - t) / (t + 1);
    out = out * (b % p) % p;
  }
  return static_cast<int>(out);
}

/// Product over n <= D prime to p of (1 - x^n)^{-mu(n)/n}, mod p.
inline std::vector<int> artin_hasse_moebius(int p, int degree) {
  std::vector<long long> e(static_cast<std::size_t>(degree) + 1, 0);
  e[0] = 1;
  int digits_needed = 1;
  for (long long pw = p; pw <= degree; pw *= p) ++digits_needed;
  const Integer modulus = ipow(p, static_cast<unsigned>(digits_needed));
  for (int n = 1; n <= degree; ++n) {
    if (n % p == 0) continue;
    const int mu = moebius(n);
    if (mu == 0) continue;
    // -mu/n mod p^K, n invertible since p does not divide n
    Integer n_inv = 1;
    {
      const Integer phi = modulus / p * (p - 1);
      Integer base = n % modulus;
      Integer exp = phi - 1;
      while (exp > 0) {
        if (exp & 1) n_inv = n_inv * base % modulus;
        base = base * base % modulus;
        exp >>= 1;
      }
    }
    Integer alpha = floor_mod(Integer(-mu) * n_inv, modulus);
    std::vector<int> digits;
    for (int k = 0; k < digits_needed; ++k) {
      digits.push_back(static_cast<int>(alpha % p));
      alpha /= p;
    }
    std::vector<long long> factor(static_cast<std::size_t>(degree) + 1, 0);
    for (long long k = 0; k * n <= degree; ++k) {
      const long long sign = (k % 2 == 0) ? 1 : p - 1;
      factor[static_cast<std::size_t>(k * n)] = sign * lucas_binomial(digits, k, p) % p;
    }
    std::vector<long long> next(static_cast<std::size_t>(degree) + 1, 0);
    for (int a = 0; a <= degree; ++a) {
      if (e[static_cast<std::size_t>(a)] == 0) continue;
      for (int b = 0; a + b <= degree; b += n) {
        next[static_cast<std::size_t>(a + b)] =
            (next[static_cast<std::size_t>(a + b)] + e[static_cast<std::size_t>(a)] * factor[static_cast<std::size_t>(b)]) % p;
      }
    }
    e = std::move(next);
  }
  return std::vector<int>(e.begin(), e.end());
}

}  // namespace detail

/// E_p(x) mod p through degree D; the exponential and Moebius-product routes must agree.
inline std::vector<int> artin_hasse_mod_p(int p, int degree) {
  const auto exact = artin_hasse_rational(p, degree);
  std::vector<int> reduced;
  for (const Rational& c : exact) reduced.push_back(detail::reduce_mod_p(c, p));
  const auto product = detail::artin_hasse_moebius(p, degree);
  for (int k = 0; k <= degree; ++k) {
    if (reduced[static_cast<std::size_t>(k)] != product[static_cast<std::size_t>(k)]) {
      fail(ErrorCode::RouteMismatch, "coefficient " + std::to_string(k) + ": exponential route gives " +
                                         std::to_string(reduced[static_cast<std::size_t>(k)]) +
                                         ", product route gives " + std::to_string(product[static_cast<std::size_t>(k)]));
    }
  }
  return reduced;
}

/// E_p(x) mod p as a power series over F_p known through x^D.
inline Laurent<FieldRing> artin_hasse_series(const FiniteField& prime_field, int degree) {
  FieldRing ring{&prime_field};
  Laurent<FieldRing> out(ring, degree);
  const auto coeffs = artin_hasse_mod_p(prime_field.p(), degree);
  for (int k = 0; k <= degree; ++k) out.set(k, ring.from_int(coeffs[static_cast<std::size_t>(k)]));
  return out;
}

/// x E'(x)/E(x) mod p through x^D; should equal sum_{p^n <= D} x^{p^n}.
inline Laurent<FieldRing> artin_hasse_dlog(const FiniteField& prime_field, int degree) {
  return dlog_truncated(artin_hasse_series(prime_field, degree));
}

}  // namespace serrewt
