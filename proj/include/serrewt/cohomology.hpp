#pragma once

// Dimensions of H^1(G_K, F_p-bar(chi)) and of the graded pieces of its
// upper-numbering ramification filtration. Jumps strictly inside
// (1, 1 + ep/(p-1)) are keyed by the integer m with s = 1 + m/(p^f - 1).

#include <map>
#include <optional>
#include <vector>

#include "serrewt/error.hpp"
#include "serrewt/integer.hpp"
#include "serrewt/tame_chars.hpp"

namespace serrewt {

inline long long h1_dimension(const FieldParams& params, const CharacterData& chi) {
  long long dim = static_cast<long long>(params.e()) * params.f();
  if (chi.is_trivial()) ++dim;
  if (chi.is_cyclotomic()) ++dim;
  return dim;
}

namespace detail {

/// Integers m with lo < m < hi and m = c (mod modulus), ascending.
inline std::vector<Integer> congruent_in_open_interval(const Integer& lo, const Integer& hi, const Integer& c,
                                                       const Integer& modulus) {
  std::vector<Integer> out;
  Integer m = lo + 1 + floor_mod(c - (lo + 1), modulus);
  for (; m < hi; m += modulus) out.push_back(m);
  return out;
}

}  // namespace detail

/// m -> #{i : m = n_i mod p^f-1} for 0 < m < ep(p^f-1)/(p-1), p not dividing m.
inline std::map<Integer, int> wild_jumps(const FieldParams& params, const CharacterData& chi) {
  std::map<Integer, int> jumps;
  const Integer top = params.window_top();
  for (const Integer& n : n_values(params, chi.signature())) {
    for (const Integer& m : detail::congruent_in_open_interval(0, top, n, params.q_minus_one())) {
      if (m % params.p() != 0) ++jumps[m];
    }
  }
  return jumps;
}

inline int graded_dimension(const FieldParams& params, const CharacterData& chi, const Rational& s) {
  if (s == 0) return chi.is_trivial() ? 1 : 0;
  const Rational top = 1 + Rational(params.e() * params.p(), params.p() - 1);
  if (s <= 1 || s > top) return 0;
  if (s == top) return chi.is_cyclotomic() ? 1 : 0;
  const Rational scaled = (s - 1) * Rational(params.q_minus_one());
  if (boost::multiprecision::denominator(scaled) != 1) return 0;
  const Integer m = boost::multiprecision::numerator(scaled);
  if (m % params.p() == 0) return 0;
  int count = 0;
  for (const Integer& n : n_values(params, chi.signature())) {
    if (floor_mod(m - n, params.q_minus_one()) == 0) ++count;
  }
  return count;
}

struct JumpEntry {
  Rational s;
  std::optional<Integer> m;  // absent for the unramified jump s = 0
  int dim = 0;

  friend bool operator==(const JumpEntry&, const JumpEntry&) = default;
};

struct JumpProfile {
  std::vector<JumpEntry> entries;  // ascending in s
  long long total = 0;
};

inline JumpProfile jump_profile(const FieldParams& params, const CharacterData& chi) {
  JumpProfile out;
  const Integer q1 = params.q_minus_one();
  if (chi.is_trivial()) out.entries.push_back({Rational(0), std::nullopt, 1});
  for (const auto& [m, d] : wild_jumps(params, chi)) {
    out.entries.push_back({1 + Rational(m, q1), m, d});
  }
  if (chi.is_cyclotomic()) {
    const Integer top = params.window_top();
    out.entries.push_back({1 + Rational(top, q1), top, 1});
  }
  for (const JumpEntry& entry : out.entries) out.total += entry.dim;
  if (out.total != h1_dimension(params, chi)) {
    fail(ErrorCode::InternalInvariantViolation, "jump dimensions sum to " + std::to_string(out.total) +
                                                    " but dim H^1 = " + std::to_string(h1_dimension(params, chi)));
  }
  return out;
}

/// Jumps in the j-th window, counted with multiplicity over i.
inline long long window_cardinality(const FieldParams& params, const CharacterData& chi, int j) {
  require(j >= 0 && j < params.e(), ErrorCode::InvalidInput, "window index must lie in [0, e)");
  const Integer width = params.window_width();
  const Integer lo = width * j;
  const Integer hi = width * (j + 1);
  long long count = 0;
  for (const Integer& n : n_values(params, chi.signature())) {
    for (const Integer& m : detail::congruent_in_open_interval(lo, hi, n, params.q_minus_one())) {
      if (m % params.p() != 0) ++count;
    }
  }
  return count;
}

}  // namespace serrewt
