#pragma once

// Mod-p characters of G_K seen through their restriction to inertia.
//
// A character is stored as its tame signature (digits a_i in [1, p], not all
// equal to p) together with the discrete log of its unramified part and two
// flags. The embeddings of the residue field are labelled so that
// tau_{i+1}^p = tau_i, which makes omega_i = omega_0^{p^{f-i}} and puts the
// exponent of omega_i at the p^{(f-i) mod f} place of the class of omega_0.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "serrewt/error.hpp"
#include "serrewt/integer.hpp"

namespace serrewt {

/// The local field K, recorded only through (p, e, f).
class FieldParams {
 public:
  static constexpr int kMaxResidueDegree = 20;
  static constexpr int kMaxRamification = 4096;

  FieldParams(int p, int e, int f) : p_(p), e_(e), f_(f) {
    require(is_prime(p), ErrorCode::InvalidInput, "p = " + std::to_string(p) + " is not prime");
    require(e >= 1 && e <= kMaxRamification, ErrorCode::InvalidInput, "e must lie in [1, 4096]");
    require(f >= 1 && f <= kMaxResidueDegree, ErrorCode::InvalidInput, "f must lie in [1, 20]");
    q_minus_one_ = ipow(p, static_cast<unsigned>(f)) - 1;
    base_window_ = q_minus_one_ / (p - 1);
  }

  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  int f() const noexcept { return f_; }

  /// p^f - 1.
  const Integer& q_minus_one() const noexcept { return q_minus_one_; }
  /// (p^f - 1)/(p - 1), the smallest value of any n_i.
  const Integer& base_window() const noexcept { return base_window_; }
  /// p(p^f - 1)/(p - 1), the width of one window in units of 1/(p^f - 1).
  Integer window_width() const { return base_window_ * p_; }
  /// e p (p^f - 1)/(p - 1): the m of the boundary jump s = 1 + ep/(p-1).
  Integer window_top() const { return window_width() * e_; }

  friend bool operator==(const FieldParams& a, const FieldParams& b) noexcept {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.f_ == b.f_;
  }

  std::string to_string() const {
    return "(p=" + std::to_string(p_) + ",e=" + std::to_string(e_) + ",f=" + std::to_string(f_) + ")";
  }

 private:
  int p_;
  int e_;
  int f_;
  Integer q_minus_one_;
  Integer base_window_;
};

/// Class modulo p^f - 1 of the exponent of omega_0 for prod_i omega_i^{c_i}.
inline Integer exponent_class(const FieldParams& params, std::span<const long long> exps) {
  require(static_cast<int>(exps.size()) == params.f(), ErrorCode::InvalidInput,
          "exponent tuple has length " + std::to_string(exps.size()) + ", expected f = " +
              std::to_string(params.f()));
  const int f = params.f();
  Integer total = 0;
  for (int i = 0; i < f; ++i) {
    total += Integer(exps[static_cast<std::size_t>(i)]) * ipow(params.p(), static_cast<unsigned>((f - i) % f));
  }
  return floor_mod(total, params.q_minus_one());
}

inline Integer exponent_class(const FieldParams& params, std::span<const int> exps) {
  std::vector<long long> wide(exps.begin(), exps.end());
  return exponent_class(params, std::span<const long long>(wide));
}

class TameSignature {
 public:
  TameSignature(const FieldParams& params, std::vector<int> digits) : digits_(std::move(digits)) {
    require(static_cast<int>(digits_.size()) == params.f(), ErrorCode::InvariantError,
            "signature length must equal f");
    bool all_p = true;
    for (int a : digits_) {
      require(a >= 1 && a <= params.p(), ErrorCode::InvariantError, "signature digit out of [1,p]");
      all_p = all_p && a == params.p();
    }
    require(!all_p, ErrorCode::InvariantError, "signature digits must not all equal p");
  }

  const std::vector<int>& digits() const noexcept { return digits_; }
  int size() const noexcept { return static_cast<int>(digits_.size()); }
  int operator[](int i) const { return digits_[static_cast<std::size_t>(i)]; }

  /// Frob . (a_0, ..., a_{f-1}) = (a_1, ..., a_0).
  TameSignature rotated(int steps = 1) const {
    TameSignature out = *this;
    const int f = size();
    for (int i = 0; i < f; ++i) {
      out.digits_[static_cast<std::size_t>(i)] = digits_[static_cast<std::size_t>(floor_mod(i + steps, f))];
    }
    return out;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(digits_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const TameSignature&, const TameSignature&) = default;
  friend auto operator<=>(const TameSignature&, const TameSignature&) = default;

 private:
  std::vector<int> digits_;
};

/// The unique signature whose n_0 lies in the class N modulo p^f - 1.
///
/// Reduces N into [(p^f-1)/(p-1), p(p^f-1)/(p-1)) and peels base-p digits from
/// the bottom with digit set [1, p]. Digit k of n_0 is a_{(f-k) mod f}.
inline TameSignature signature_from_class(const FieldParams& params, const Integer& cls) {
  const Integer& q1 = params.q_minus_one();
  Integer rep = params.base_window() + floor_mod(cls - params.base_window(), q1);
  const int f = params.f();
  const int p = params.p();
  std::vector<int> digits(static_cast<std::size_t>(f), 0);
  for (int k = 0; k < f; ++k) {
    int d = static_cast<int>(rep % p);
    if (d == 0) d = p;
    rep = (rep - d) / p;
    digits[static_cast<std::size_t>((f - k) % f)] = d;
  }
  if (rep != 0) fail(ErrorCode::InternalInvariantViolation, "digit extraction left a remainder");
  return TameSignature(params, std::move(digits));
}

inline TameSignature canonical_signature(const FieldParams& params, std::span<const long long> exps) {
  return signature_from_class(params, exponent_class(params, exps));
}

inline TameSignature canonical_signature(const FieldParams& params, std::span<const int> exps) {
  return signature_from_class(params, exponent_class(params, exps));
}

/// n_i = sum_{j=1}^{f} a_{i+j} p^{f-j}, indices mod f; chi|_I = omega_i^{n_i}.
inline std::vector<Integer> n_values(const FieldParams& params, const TameSignature& sig) {
  const int f = params.f();
  std::vector<Integer> out(static_cast<std::size_t>(f));
  for (int i = 0; i < f; ++i) {
    Integer n = 0;
    for (int j = 1; j <= f; ++j) {
      n += Integer(sig[(i + j) % f]) * ipow(params.p(), static_cast<unsigned>(f - j));
    }
    out[static_cast<std::size_t>(i)] = n;
  }
  return out;
}

inline Integer signature_class(const FieldParams& params, const TameSignature& sig) {
  return floor_mod(n_values(params, sig)[0], params.q_minus_one());
}

/// Exponents m_i in [0, p-1], not all p-1, with the same class as sig.
inline std::vector<int> low_digit_exponents(const FieldParams& params, const TameSignature& sig) {
  Integer cls = signature_class(params, sig);
  const int f = params.f();
  std::vector<int> m(static_cast<std::size_t>(f), 0);
  for (int k = 0; k < f; ++k) {
    m[static_cast<std::size_t>((f - k) % f)] = static_cast<int>(cls % params.p());
    cls /= params.p();
  }
  return m;
}

/// (f', f''): orbit size of the signature under rotation and f / f'.
inline std::pair<int, int> niveau(const TameSignature& sig) {
  const int f = sig.size();
  for (int d = 1; d <= f; ++d) {
    if (f % d == 0 && sig.rotated(d) == sig) return {d, f / d};
  }
  return {f, 1};
}

inline TameSignature trivial_signature(const FieldParams& params) {
  return TameSignature(params, std::vector<int>(static_cast<std::size_t>(params.f()), params.p() - 1));
}

/// Signature of the mod-p cyclotomic character on inertia, (prod_i omega_i)^e.
inline TameSignature cyclotomic_inertia_signature(const FieldParams& params) {
  std::vector<long long> exps(static_cast<std::size_t>(params.f()), params.e());
  return canonical_signature(params, std::span<const long long>(exps));
}

/// mu(Frob_K) = g^dlog for the fixed generator g of F_{p^degree}^x.
struct UnramifiedPart {
  int degree = 1;
  std::uint64_t dlog = 0;

  bool is_trivial() const noexcept { return dlog == 0; }

  friend bool operator==(const UnramifiedPart& a, const UnramifiedPart& b) noexcept {
    if (a.is_trivial() || b.is_trivial()) return a.is_trivial() == b.is_trivial();
    return a.degree == b.degree && a.dlog == b.dlog;
  }
};

/// p^r - 1 as a machine integer; the unramified data is kept in 64 bits.
inline std::uint64_t unit_group_order(int p, int degree) {
  require(degree >= 1, ErrorCode::InvariantError, "unramified degree must be >= 1");
  Integer q1 = ipow(p, static_cast<unsigned>(degree)) - 1;
  require(q1 < (Integer(1) << 62), ErrorCode::InvalidInput, "F_{p^r} too large for unramified data");
  return q1.convert_to<std::uint64_t>();
}

inline void validate_unramified(int p, const UnramifiedPart& u) {
  const std::uint64_t q1 = unit_group_order(p, u.degree);
  require(u.dlog < q1, ErrorCode::InvariantError, "unramified dlog must lie in [0, p^r - 1)");
}

/// Multiplicative order of mu(Frob_K); always prime to p.
inline std::uint64_t unramified_order(int p, const UnramifiedPart& u) {
  const std::uint64_t q1 = unit_group_order(p, u.degree);
  return q1 / std::gcd(q1, u.dlog == 0 ? q1 : u.dlog);
}

inline UnramifiedPart unramified_inverse(int p, const UnramifiedPart& u) {
  if (u.is_trivial()) return u;
  const std::uint64_t q1 = unit_group_order(p, u.degree);
  return {u.degree, q1 - u.dlog};
}

/// mu_1 / mu_2 in a common F_{p^r}. A trivial factor adapts to the other's field.
inline UnramifiedPart unramified_quotient(int p, const UnramifiedPart& a, const UnramifiedPart& b) {
  if (b.is_trivial()) return a;
  if (a.is_trivial()) return unramified_inverse(p, b);
  require(a.degree == b.degree, ErrorCode::InvalidInput,
          "unramified parts live in different fields F_{p^" + std::to_string(a.degree) + "} and F_{p^" +
              std::to_string(b.degree) + "}");
  const std::uint64_t q1 = unit_group_order(p, a.degree);
  std::uint64_t d = (a.dlog + q1 - b.dlog) % q1;
  return {d == 0 ? 1 : a.degree, d};
}

/// A character chi: G_K -> F_p-bar^x as (signature, unramified part, flags).
///
/// Triviality is a property of the data and is recomputed; a `trivial` flag
/// that contradicts the data is rejected. The cyclotomic flag is a caller
/// declaration, checked only against the inertial signature.
class CharacterData {
 public:
  CharacterData(const FieldParams& params, TameSignature signature, UnramifiedPart unram = {},
                bool declared_trivial = false, bool declared_cyclotomic = false)
      : signature_(std::move(signature)), unram_(unram), cyclotomic_(declared_cyclotomic) {
    require(signature_.size() == params.f(), ErrorCode::InvariantError, "signature length must equal f");
    validate_unramified(params.p(), unram_);
    const bool data_trivial = signature_ == trivial_signature(params) && unram_.is_trivial();
    require(!declared_trivial || data_trivial, ErrorCode::InvariantError,
            "declared trivial character must have signature (p-1,...,p-1) and trivial unramified part");
    require(!declared_cyclotomic || signature_ == cyclotomic_inertia_signature(params), ErrorCode::InvariantError,
            "declared cyclotomic character must have signature " +
                cyclotomic_inertia_signature(params).to_string());
    trivial_ = data_trivial;
  }

  const TameSignature& signature() const noexcept { return signature_; }
  const UnramifiedPart& unram() const noexcept { return unram_; }
  bool is_trivial() const noexcept { return trivial_; }
  bool is_cyclotomic() const noexcept { return cyclotomic_; }

  friend bool operator==(const CharacterData&, const CharacterData&) = default;

 private:
  TameSignature signature_;
  UnramifiedPart unram_;
  bool trivial_ = false;
  bool cyclotomic_ = false;
};

inline CharacterData character_from_exps(const FieldParams& params, std::span<const long long> exps,
                                         UnramifiedPart unram = {}, bool declared_trivial = false,
                                         bool declared_cyclotomic = false) {
  return CharacterData(params, canonical_signature(params, exps), unram, declared_trivial, declared_cyclotomic);
}

inline CharacterData trivial_character(const FieldParams& params) {
  return CharacterData(params, trivial_signature(params));
}

/// chi restricted to inertia is trivial.
inline bool is_unramified(const FieldParams& params, const CharacterData& chi) {
  return chi.signature() == trivial_signature(params);
}

/// chi = chi1 * chi2^{-1}. Cyclotomicity of the quotient is never inferred.
inline CharacterData char_quotient(const FieldParams& params, const CharacterData& chi1, const CharacterData& chi2,
                                   bool declared_cyclotomic = false) {
  require(chi1.signature().size() == params.f() && chi2.signature().size() == params.f(),
          ErrorCode::InvalidInput, "characters over different residue degrees");
  const Integer cls = signature_class(params, chi1.signature()) - signature_class(params, chi2.signature());
  return CharacterData(params, signature_from_class(params, cls),
                       unramified_quotient(params.p(), chi1.unram(), chi2.unram()), false, declared_cyclotomic);
}

/// chi * prod_i omega_i^{shift_i}; unramified part kept, flags dropped.
inline CharacterData twist_character(const FieldParams& params, const CharacterData& chi,
                                     std::span<const long long> shift) {
  const Integer cls = signature_class(params, chi.signature()) + exponent_class(params, shift);
  return CharacterData(params, signature_from_class(params, cls), chi.unram());
}

}  // namespace serrewt
