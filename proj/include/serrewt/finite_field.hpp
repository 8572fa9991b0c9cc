#pragma once

// Exact arithmetic in F_{p^r} with log/antilog tables.
//
// The modulus is the lexicographically least monic primitive polynomial of
// degree r, comparing coefficient tuples (c_{r-1}, ..., c_0). The class of x
// is the fixed generator g, so an unramified value g^dlog is identified by
// its dlog. Elements are encoded as integers whose base-p digits are the
// coefficients of 1, x, ..., x^{r-1}.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "serrewt/error.hpp"
#include "serrewt/integer.hpp"

namespace serrewt {

class FiniteField {
 public:
  using Elem = std::uint32_t;
  static constexpr std::uint64_t kMaxSize = std::uint64_t{1} << 22;

  FiniteField(int p, int degree) : p_(p), degree_(degree) {
    require(is_prime(p), ErrorCode::InvalidInput, "field characteristic must be prime");
    require(degree >= 1, ErrorCode::InvalidInput, "field degree must be >= 1");
    const Integer size = ipow(p, static_cast<unsigned>(degree));
    require(size <= kMaxSize, ErrorCode::InvalidInput,
            "F_{" + std::to_string(p) + "^" + std::to_string(degree) + "} exceeds the table size limit");
    size_ = size.convert_to<std::uint32_t>();
    build();
  }

  int p() const noexcept { return p_; }
  int degree() const noexcept { return degree_; }
  std::uint32_t size() const noexcept { return size_; }
  std::uint32_t unit_order() const noexcept { return size_ - 1; }
  /// Coefficients c_0, ..., c_{r-1} of the monic modulus (leading 1 omitted).
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem generator() const noexcept { return exp_[1 % unit_order()]; }

  Elem from_int(long long n) const {
    return static_cast<Elem>(floor_mod(n, static_cast<long long>(p_)));
  }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    Elem out = 0;
    Elem place = 1;
    while (a != 0 || b != 0) {
      out += place * ((a % p_ + b % p_) % p_);
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }

  Elem neg(Elem a) const {
    if (p_ == 2) return a;
    Elem out = 0;
    Elem place = 1;
    while (a != 0) {
      out += place * ((p_ - a % p_) % p_);
      a /= p_;
      place *= p_;
    }
    return out;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % unit_order()];
  }

  Elem inv(Elem a) const {
    require(a != 0, ErrorCode::InternalInvariantViolation, "inverse of zero");
    return exp_[(unit_order() - log_[a]) % unit_order()];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// a^n for any integer n (negative n needs a != 0).
  Elem pow(Elem a, long long n) const {
    if (a == 0) {
      require(n >= 0, ErrorCode::InternalInvariantViolation, "negative power of zero");
      return n == 0 ? 1 : 0;
    }
    const long long order = unit_order();
    return exp_[static_cast<std::size_t>(floor_mod(static_cast<long long>(log_[a]) * floor_mod(n, order), order))];
  }

  /// g^k.
  Elem exp(long long k) const {
    return exp_[static_cast<std::size_t>(floor_mod(k, static_cast<long long>(unit_order())))];
  }

  /// k in [0, q-1) with g^k = a.
  std::uint32_t log(Elem a) const {
    require(a != 0, ErrorCode::InternalInvariantViolation, "log of zero");
    return log_[a];
  }

  /// Multiplicative order of a nonzero a.
  std::uint64_t order(Elem a) const {
    const std::uint64_t q1 = unit_order();
    return q1 / std::gcd(q1, static_cast<std::uint64_t>(log(a)) == 0 ? q1 : log(a));
  }

  /// Horner evaluation of the monic polynomial with low coefficients `low`.
  Elem eval_monic(const std::vector<int>& low, Elem x) const {
    Elem acc = 1;
    for (auto it = low.rbegin(); it != low.rend(); ++it) acc = add(mul(acc, x), from_int(*it));
    return acc;
  }

  std::string to_string(Elem a) const {
    if (a == 0) return "0";
    return "g^" + std::to_string(log_[a]);
  }

 private:
  // Digits of x * (element) reduced by the candidate modulus.
  void times_x(std::vector<int>& digits, const std::vector<int>& low) const {
    const int top = digits.back();
    for (int k = degree_ - 1; k > 0; --k) digits[static_cast<std::size_t>(k)] = digits[static_cast<std::size_t>(k - 1)];
    digits[0] = 0;
    for (int k = 0; k < degree_; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      digits[idx] = static_cast<int>(floor_mod(digits[idx] - static_cast<long long>(top) * low[idx], p_));
    }
  }

  Elem encode(const std::vector<int>& digits) const {
    Elem out = 0;
    for (int k = degree_ - 1; k >= 0; --k) out = out * static_cast<Elem>(p_) + static_cast<Elem>(digits[static_cast<std::size_t>(k)]);
    return out;
  }

  // Fills the tables if x has order q - 1 modulo `low`.
  bool try_modulus(const std::vector<int>& low) {
    if (low[0] == 0) return false;
    const std::uint32_t q1 = unit_order();
    exp_.assign(q1, 0);
    log_.assign(size_, 0);
    std::vector<int> digits(static_cast<std::size_t>(degree_), 0);
    digits[0] = 1;
    for (std::uint32_t k = 0; k < q1; ++k) {
      const Elem e = encode(digits);
      if (k > 0 && e == 1) return false;
      exp_[k] = e;
      log_[e] = k;
      if (degree_ == 1) {
        digits[0] = static_cast<int>(floor_mod(-static_cast<long long>(digits[0]) * low[0], p_));
      } else {
        times_x(digits, low);
      }
    }
    return encode(digits) == 1;
  }

  void build() {
    // Candidates in lexicographic order of (c_{r-1}, ..., c_0): c_0 varies fastest.
    std::vector<int> low(static_cast<std::size_t>(degree_), 0);
    while (true) {
      if (try_modulus(low)) {
        modulus_ = low;
        return;
      }
      int k = 0;
      while (k < degree_ && ++low[static_cast<std::size_t>(k)] == p_) low[static_cast<std::size_t>(k++)] = 0;
      if (k == degree_) fail(ErrorCode::InternalInvariantViolation, "no primitive polynomial found");
    }
  }

  int p_;
  int degree_;
  std::uint32_t size_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// Image of the generator of F_{p^r} in a field of degree divisible by r.
///
/// Picks the least k for which g^{k (Q-1)/(p^r-1)} is a root of the modulus
/// of F_{p^r}; the result is the antilog exponent of the image of g_r.
inline std::uint64_t subfield_generator_log(const FiniteField& big, const FiniteField& small) {
  require(big.p() == small.p() && big.degree() % small.degree() == 0, ErrorCode::InvalidInput,
          "F_{p^" + std::to_string(small.degree()) + "} does not embed in F_{p^" + std::to_string(big.degree()) + "}");
  const std::uint64_t cofactor = big.unit_order() / small.unit_order();
  for (std::uint64_t k = 1; k < small.unit_order() + 1; ++k) {
    if (std::gcd(k, static_cast<std::uint64_t>(small.unit_order())) != 1) continue;
    const auto root = big.exp(static_cast<long long>(k * cofactor));
    if (big.eval_monic(small.modulus(), root) == 0) return k * cofactor;
  }
  fail(ErrorCode::InternalInvariantViolation, "modulus of the subfield has no root in the big field");
}

}  // namespace serrewt
