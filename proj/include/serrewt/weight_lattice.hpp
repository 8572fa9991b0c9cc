#pragma once

// Serre weights and the Kisin-bound profile (t_i, s_i, I_i, xi_i).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "serrewt/error.hpp"
#include "serrewt/integer.hpp"
#include "serrewt/tame_chars.hpp"

namespace serrewt {

/// V_{eta,theta} = tensor_lambda det^{theta_lambda} (x) Sym^{eta_lambda - theta_lambda}.
struct SerreWeight {
  std::vector<int> eta;
  std::vector<int> theta;

  static SerreWeight from_r(std::span<const int> r) {
    SerreWeight w;
    for (int ri : r) w.eta.push_back(ri - 1);
    w.theta.assign(w.eta.size(), 0);
    return w;
  }

  std::vector<int> r() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < eta.size(); ++i) out.push_back(eta[i] - theta[i] + 1);
    return out;
  }

  friend bool operator==(const SerreWeight&, const SerreWeight&) = default;
};

inline void validate_weight(const FieldParams& params, const SerreWeight& w) {
  const auto f = static_cast<std::size_t>(params.f());
  require(w.eta.size() == f && w.theta.size() == f, ErrorCode::InvariantError, "weight tuples must have length f");
  bool some_small = false;
  for (std::size_t i = 0; i < f; ++i) {
    require(w.theta[i] >= 0 && w.theta[i] <= params.p() - 1, ErrorCode::InvariantError, "theta out of [0,p-1]");
    const int diff = w.eta[i] - w.theta[i];
    require(diff >= 0 && diff <= params.p() - 1, ErrorCode::InvariantError, "eta - theta out of [0,p-1]");
    some_small = some_small || w.theta[i] < params.p() - 1;
  }
  require(some_small, ErrorCode::InvariantError, "theta must be < p-1 somewhere");
}

inline void validate_r(const FieldParams& params, std::span<const int> r) {
  require(static_cast<int>(r.size()) == params.f(), ErrorCode::InvariantError, "r must have length f");
  for (int ri : r) require(ri >= 1 && ri <= params.p(), ErrorCode::InvariantError, "r_i out of [1,p]");
}

struct TwistResult {
  SerreWeight weight;
  CharacterData chi1;
  CharacterData chi2;
};

/// (V_{eta-theta,0}, chi1 prod omega_i^{-theta_i}, chi2 prod omega_i^{-theta_i}).
inline TwistResult twist_normalize(const FieldParams& params, const SerreWeight& weight, const CharacterData& chi1,
                                   const CharacterData& chi2) {
  validate_weight(params, weight);
  SerreWeight normalized;
  std::vector<long long> shift;
  for (std::size_t i = 0; i < weight.eta.size(); ++i) {
    normalized.eta.push_back(weight.eta[i] - weight.theta[i]);
    shift.push_back(-static_cast<long long>(weight.theta[i]));
  }
  normalized.theta.assign(normalized.eta.size(), 0);
  if (std::all_of(weight.theta.begin(), weight.theta.end(), [](int t) { return t == 0; })) {
    return {normalized, chi1, chi2};
  }
  return {normalized, twist_character(params, chi1, shift), twist_character(params, chi2, shift)};
}

/// [0, e-1] union [r_i, r_i + e - 1], ascending without repeats.
inline std::vector<int> allowed_exponents(const FieldParams& params, int r_i) {
  std::vector<int> out;
  for (int a = 0; a < params.e(); ++a) out.push_back(a);
  for (int a = r_i; a < r_i + params.e(); ++a) out.push_back(a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool in_allowed_range(const FieldParams& params, int r_i, long long a) {
  return (a >= 0 && a <= params.e() - 1) || (a >= r_i && a <= r_i + params.e() - 1);
}

namespace detail {

inline void validate_low_exponents(const FieldParams& params, std::span<const int> m) {
  require(static_cast<int>(m.size()) == params.f(), ErrorCode::InvalidInput, "chi2 exponents must have length f");
  bool all_top = true;
  for (int mi : m) {
    require(mi >= 0 && mi <= params.p() - 1, ErrorCode::InvalidInput, "chi2 exponent out of [0,p-1]");
    all_top = all_top && mi == params.p() - 1;
  }
  require(!all_top, ErrorCode::InvalidInput, "chi2 exponents must not all equal p-1");
}

}  // namespace detail

/// Tuples a with a_i in [0,e-1] u [r_i,r_i+e-1] and chi2|_I = prod omega_i^{a_i}.
inline std::vector<std::vector<int>> candidate_set(const FieldParams& params, std::span<const int> r,
                                                   std::span<const int> chi2_exps) {
  validate_r(params, r);
  detail::validate_low_exponents(params, chi2_exps);
  const Integer target = exponent_class(params, chi2_exps);
  const int f = params.f();
  std::vector<std::vector<int>> choices;
  for (int i = 0; i < f; ++i) choices.push_back(allowed_exponents(params, r[static_cast<std::size_t>(i)]));

  std::vector<std::vector<int>> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(f), 0);
  std::vector<int> tuple(static_cast<std::size_t>(f));
  while (true) {
    for (int i = 0; i < f; ++i) tuple[static_cast<std::size_t>(i)] = choices[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
    if (exponent_class(params, std::span<const int>(tuple)) == target) out.push_back(tuple);
    int pos = f - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == choices[static_cast<std::size_t>(pos)].size()) {
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// m + sum_{i in J} v_i, v_i = -1 at position i and +p at position i+1 mod f.
inline std::vector<long long> apply_shift(const FieldParams& params, std::span<const int> m, std::uint32_t subset) {
  const int f = params.f();
  std::vector<long long> out(m.begin(), m.end());
  for (int i = 0; i < f; ++i) {
    if (subset & (1U << i)) {
      out[static_cast<std::size_t>(i)] -= 1;
      out[static_cast<std::size_t>((i + 1) % f)] += params.p();
    }
  }
  return out;
}

inline std::vector<int> subset_indices(std::uint32_t subset, int f) {
  std::vector<int> out;
  for (int i = 0; i < f; ++i)
    if (subset & (1U << i)) out.push_back(i);
  return out;
}

/// Every J (as a bitmask) for which m + sum_J v_i lands in the candidate range.
inline std::vector<std::uint32_t> valid_shift_subsets(const FieldParams& params, std::span<const int> r,
                                                      std::span<const int> m) {
  validate_r(params, r);
  detail::validate_low_exponents(params, m);
  const int f = params.f();
  std::vector<std::uint32_t> out;
  for (std::uint32_t subset = 0; subset < (1U << f); ++subset) {
    const auto shifted = apply_shift(params, m, subset);
    bool ok = true;
    for (int i = 0; i < f && ok; ++i) {
      ok = in_allowed_range(params, r[static_cast<std::size_t>(i)], shifted[static_cast<std::size_t>(i)]);
    }
    if (ok) out.push_back(subset);
  }
  return out;
}

/// The valid J contained in every other valid J.
inline std::vector<int> minimal_shift_set(const FieldParams& params, std::span<const int> r, std::span<const int> m) {
  const auto valid = valid_shift_subsets(params, r, m);
  if (valid.empty()) fail(ErrorCode::NoValidShift, "no subset J puts chi2's exponents in the allowed range");
  const int f = params.f();
  // size first, then lexicographic on the sorted index list
  auto key = [f](std::uint32_t s) { return std::make_pair(std::popcount(s), subset_indices(s, f)); };
  std::uint32_t best = valid.front();
  for (std::uint32_t s : valid)
    if (key(s) < key(best)) best = s;
  for (std::uint32_t s : valid) {
    if ((best & s) != best) {
      fail(ErrorCode::MinimalityAmbiguous, "smallest valid shift set is not contained in every valid shift set");
    }
  }
  return subset_indices(best, f);
}

struct WeightProfile {
  std::vector<int> r;
  std::vector<int> t;
  std::vector<int> s;
  std::vector<int> j_min;
  std::vector<std::vector<int>> intervals;
  std::vector<Integer> xi;
  TameSignature chi_signature;

  std::size_t interval_total() const {
    std::size_t n = 0;
    for (const auto& interval : intervals) n += interval.size();
    return n;
  }
};

/// I_i = [0, s_i - 1] if t_i >= r_i, else {t_i} u [r_i, s_i - 1].
inline std::vector<int> degree_interval(int r_i, int t_i, int s_i) {
  std::vector<int> out;
  if (t_i >= r_i) {
    for (int d = 0; d < s_i; ++d) out.push_back(d);
  } else {
    out.push_back(t_i);
    for (int d = r_i; d < s_i; ++d) out.push_back(d);
  }
  return out;
}

/// xi_i = (p^f-1) s_i + sum_{j=0}^{f-1} (s_{i+j+1} - t_{i+j+1}) p^{f-1-j}.
inline std::vector<Integer> xi_constants(const FieldParams& params, std::span<const int> t, std::span<const int> s) {
  const int f = params.f();
  std::vector<Integer> out;
  for (int i = 0; i < f; ++i) {
    Integer xi = params.q_minus_one() * s[static_cast<std::size_t>(i)];
    for (int j = 0; j < f; ++j) {
      const auto idx = static_cast<std::size_t>((i + j + 1) % f);
      xi += Integer(s[idx] - t[idx]) * ipow(params.p(), static_cast<unsigned>(f - 1 - j));
    }
    out.push_back(xi);
  }
  return out;
}

/// The profile determined by (r, m) alone; chi's signature is read off from s - t.
inline WeightProfile kisin_profile(const FieldParams& params, std::span<const int> r, std::span<const int> m) {
  const std::vector<int> j_min = minimal_shift_set(params, r, m);
  std::uint32_t mask = 0;
  for (int i : j_min) mask |= 1U << i;
  const auto shifted = apply_shift(params, m, mask);
  const int f = params.f();
  std::vector<int> t(shifted.begin(), shifted.end());
  std::vector<int> s(static_cast<std::size_t>(f));
  std::vector<long long> diff(static_cast<std::size_t>(f));
  std::vector<std::vector<int>> intervals;
  for (int i = 0; i < f; ++i) {
    const auto k = static_cast<std::size_t>(i);
    s[k] = r[k] + params.e() - 1 - t[k];
    diff[k] = s[k] - t[k];
    intervals.push_back(degree_interval(r[k], t[k], s[k]));
  }
  auto xi = xi_constants(params, t, s);
  TameSignature sig = canonical_signature(params, std::span<const long long>(diff));
  return {std::vector<int>(r.begin(), r.end()), std::move(t), std::move(s), j_min, std::move(intervals),
          std::move(xi), std::move(sig)};
}

inline WeightProfile ts_profile(const FieldParams& params, std::span<const int> r, const CharacterData& chi1,
                                const CharacterData& chi2) {
  const std::vector<int> m = low_digit_exponents(params, chi2.signature());
  WeightProfile profile = kisin_profile(params, r, m);
  const TameSignature chi_sig = char_quotient(params, chi1, chi2).signature();
  if (profile.chi_signature != chi_sig) {
    fail(ErrorCode::ChiMismatch, "prod omega_i^{s_i - t_i} has signature " + profile.chi_signature.to_string() +
                                     " but chi1/chi2 has signature " + chi_sig.to_string());
  }
  const auto n = n_values(params, chi_sig);
  for (int i = 0; i < params.f(); ++i) {
    if (floor_mod(profile.xi[static_cast<std::size_t>(i)] - n[static_cast<std::size_t>(i)], params.q_minus_one()) !=
        0) {
      fail(ErrorCode::InternalInvariantViolation, "xi_" + std::to_string(i) + " is not congruent to n_i");
    }
  }
  return profile;
}

}  // namespace serrewt
