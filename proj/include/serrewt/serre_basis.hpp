#pragma once

// The explicit basis of H^1(G_K, F_p-bar(chi)) indexed by W = W' x [0, f''),
// plus c_ur and c_tr, and the distinguished subspace L_V^AH spanned by the
// labels in J_V^AH.

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "serrewt/cohomology.hpp"
#include "serrewt/error.hpp"
#include "serrewt/integer.hpp"
#include "serrewt/tame_chars.hpp"
#include "serrewt/weight_lattice.hpp"

namespace serrewt {

struct BasisLabel {
  enum class Kind { Alpha = 0, Unramified = 1, TresRamifiee = 2 };

  Kind kind = Kind::Alpha;
  Integer m = 0;
  int k = 0;

  static BasisLabel alpha(Integer m, int k) { return {Kind::Alpha, std::move(m), k}; }
  static BasisLabel unramified() { return {Kind::Unramified, 0, 0}; }
  static BasisLabel tres_ramifiee() { return {Kind::TresRamifiee, 0, 0}; }

  bool is_alpha() const noexcept { return kind == Kind::Alpha; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Alpha: return "Alpha(" + m.str() + "," + std::to_string(k) + ")";
      case Kind::Unramified: return "Unramified";
      case Kind::TresRamifiee: return "TresRamifiee";
    }
    return "?";
  }

  // Alpha labels by (m, k), then Unramified, then TresRamifiee.
  friend bool operator<(const BasisLabel& a, const BasisLabel& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.m != b.m) return a.m < b.m;
    return a.k < b.k;
  }
  friend bool operator==(const BasisLabel& a, const BasisLabel& b) {
    return a.kind == b.kind && a.m == b.m && a.k == b.k;
  }
};

using LabelSet = std::set<BasisLabel>;

inline std::string to_string(const LabelSet& labels) {
  std::string out = "{";
  bool first = true;
  for (const auto& label : labels) {
    if (!first) out += ", ";
    out += label.to_string();
    first = false;
  }
  return out + "}";
}

/// W' = union over windows j < e of {m : p does not divide m, m = some n_i}.
inline std::vector<Integer> w_prime(const FieldParams& params, const CharacterData& chi) {
  std::vector<Integer> out;
  for (const auto& [m, d] : wild_jumps(params, chi)) out.push_back(m);
  return out;
}

/// i_m in [0, f') with m = n_{i_m} mod p^f - 1.
inline int i_m_index(const FieldParams& params, const CharacterData& chi, const Integer& m) {
  const auto [f1, f2] = niveau(chi.signature());
  const auto n = n_values(params, chi.signature());
  for (int i = 0; i < f1; ++i) {
    if (floor_mod(m - n[static_cast<std::size_t>(i)], params.q_minus_one()) == 0) return i;
  }
  fail(ErrorCode::NoMatchingIndex, "m = " + m.str() + " matches no n_i modulo p^f - 1");
}

inline std::vector<BasisLabel> basis_labels(const FieldParams& params, const CharacterData& chi) {
  const int f2 = niveau(chi.signature()).second;
  std::vector<BasisLabel> out;
  for (const Integer& m : w_prime(params, chi)) {
    for (int k = 0; k < f2; ++k) out.push_back(BasisLabel::alpha(m, k));
  }
  if (chi.is_trivial()) out.push_back(BasisLabel::unramified());
  if (chi.is_cyclotomic()) out.push_back(BasisLabel::tres_ramifiee());
  return out;
}

/// e_M must divide p^f - 1 and (p^f - 1)/e_M must divide every n_i, so that
/// chi becomes trivial on G_M.
inline void validate_e_m(const FieldParams& params, const CharacterData& chi, const Integer& e_m) {
  const Integer& q1 = params.q_minus_one();
  require(e_m >= 1 && q1 % e_m == 0, ErrorCode::InvalidEM, "e_M must divide p^f-1");
  const Integer quotient = q1 / e_m;
  for (const Integer& n : n_values(params, chi.signature())) {
    require(n % quotient == 0, ErrorCode::InvalidEM,
            "(p^f-1)/e_M = " + quotient.str() + " must divide n_i = " + n.str());
  }
}

/// All e_M admissible for chi, ascending.
inline std::vector<Integer> admissible_e_m(const FieldParams& params, const CharacterData& chi) {
  std::vector<Integer> out;
  const Integer& q1 = params.q_minus_one();
  const auto n = n_values(params, chi.signature());
  for (Integer d = 1; d * d <= q1; ++d) {
    if (q1 % d != 0) continue;
    for (const Integer& cand : {d, Integer(q1 / d)}) {
      const Integer quotient = q1 / cand;
      if (std::all_of(n.begin(), n.end(), [&](const Integer& ni) { return ni % quotient == 0; })) {
        out.push_back(cand);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// m' = e_M m / (p^f - 1).
inline Integer scale_to_e_m(const FieldParams& params, const Integer& value, const Integer& e_m) {
  return value * e_m / params.q_minus_one();
}

/// J_V^AH, one label per (i, d in I_i) at most.
///
/// For each (i, d): x = xi'_i - d e_M, j = v_p(x), a' = x / p^j. A label exists
/// iff 0 < a' < e_M e p/(p-1); then m = a' (p^f-1)/e_M lies in W' and k is
/// fixed by i_m + k f' = i - j (mod f).
inline LabelSet j_v_ah(const FieldParams& params, const WeightProfile& profile, const CharacterData& chi,
                       const Integer& e_m) {
  validate_e_m(params, chi, e_m);
  const int p = params.p();
  const int f = params.f();
  const auto [f1, f2] = niveau(chi.signature());
  const auto wp = w_prime(params, chi);
  const Integer top_scaled = e_m * params.e() * p;  // compared against a' (p-1)

  LabelSet out;
  for (int i = 0; i < f; ++i) {
    const Integer xi_scaled = scale_to_e_m(params, profile.xi[static_cast<std::size_t>(i)], e_m);
    for (int d : profile.intervals[static_cast<std::size_t>(i)]) {
      const Integer x = xi_scaled - e_m * d;
      if (x <= 0) continue;
      const unsigned j = valuation(x, p);
      const Integer a_scaled = x / ipow(p, j);
      if (a_scaled * (p - 1) >= top_scaled) continue;
      const Integer m = a_scaled * params.q_minus_one() / e_m;
      if (!std::binary_search(wp.begin(), wp.end(), m)) {
        fail(ErrorCode::InternalInvariantViolation, "a = " + m.str() + " passes the range test but is not in W'");
      }
      const int im = i_m_index(params, chi, m);
      const long long shift = floor_mod(static_cast<long long>(i) - static_cast<long long>(j) - im, f);
      if (shift % f1 != 0) {
        fail(ErrorCode::InternalInvariantViolation, "k congruence unsolvable for m = " + m.str());
      }
      const int k = static_cast<int>(floor_mod(shift / f1, f2));
      BasisLabel label = BasisLabel::alpha(m, k);
      if (!out.insert(label).second) {
        fail(ErrorCode::InternalInvariantViolation, "two (i, d) pairs produced " + label.to_string());
      }
    }
  }
  return out;
}

/// Literal search over alpha in W, i, d in I_i and 0 <= j <= log_p(xi'_i).
inline LabelSet j_v_ah_bruteforce(const FieldParams& params, const WeightProfile& profile, const CharacterData& chi,
                                  const Integer& e_m) {
  validate_e_m(params, chi, e_m);
  const int p = params.p();
  const int f = params.f();
  const auto [f1, f2] = niveau(chi.signature());
  LabelSet out;
  for (const Integer& m : w_prime(params, chi)) {
    const Integer m_scaled = scale_to_e_m(params, m, e_m);
    const int im = i_m_index(params, chi, m);
    for (int k = 0; k < f2; ++k) {
      bool witnessed = false;
      for (int i = 0; i < f && !witnessed; ++i) {
        const Integer xi_scaled = scale_to_e_m(params, profile.xi[static_cast<std::size_t>(i)], e_m);
        unsigned j_max = 0;
        for (Integer pw = p; pw <= xi_scaled; pw *= p) ++j_max;
        for (int d : profile.intervals[static_cast<std::size_t>(i)]) {
          for (unsigned j = 0; j <= j_max && !witnessed; ++j) {
            const bool eq1 = ipow(p, j) * m_scaled == xi_scaled - e_m * d;
            const bool eq2 = floor_mod(static_cast<long long>(im) + static_cast<long long>(k) * f1 - i +
                                           static_cast<long long>(j),
                                       f) == 0;
            witnessed = eq1 && eq2;
          }
        }
      }
      if (witnessed) out.insert(BasisLabel::alpha(m, k));
    }
  }
  return out;
}

struct LVOptions {
  std::optional<Integer> e_m;
  bool chi_cyclotomic = false;  // declares chi = chi1/chi2 cyclotomic
};

struct LVResult {
  std::vector<BasisLabel> labels;
  bool exceptional = false;
  long long dimension = 0;
  Integer e_m = 0;
  CharacterData chi;
  SerreWeight normalized_weight;
  std::optional<WeightProfile> profile;
  std::optional<int> trivial_extra_index;  // i_0 of the extra degree when chi is trivial
};

/// chi cyclotomic, chi2 unramified and r_i = p for every i.
inline bool is_exceptional(const FieldParams& params, const CharacterData& chi, const CharacterData& chi2,
                           std::span<const int> r) {
  return chi.is_cyclotomic() && is_unramified(params, chi2) &&
         std::all_of(r.begin(), r.end(), [&](int ri) { return ri == params.p(); });
}

inline LVResult l_v_ah(const FieldParams& params, const SerreWeight& weight, const CharacterData& chi1,
                       const CharacterData& chi2, const LVOptions& options = {}) {
  const TwistResult twisted = twist_normalize(params, weight, chi1, chi2);
  const std::vector<int> r = twisted.weight.r();
  CharacterData chi = char_quotient(params, twisted.chi1, twisted.chi2, options.chi_cyclotomic);
  LVResult result{{}, false, 0, options.e_m.value_or(params.q_minus_one()), chi, twisted.weight, std::nullopt,
                  std::nullopt};
  validate_e_m(params, chi, result.e_m);

  if (is_exceptional(params, chi, twisted.chi2, r)) {
    result.exceptional = true;
    result.labels = basis_labels(params, chi);
  } else {
    WeightProfile profile = ts_profile(params, r, twisted.chi1, twisted.chi2);
    for (const auto& label : j_v_ah(params, profile, chi, result.e_m)) result.labels.push_back(label);
    if (chi.is_trivial()) {
      result.labels.push_back(BasisLabel::unramified());
      result.trivial_extra_index = 0;
    }
    result.profile = std::move(profile);
  }
  result.dimension = static_cast<long long>(result.labels.size());
  return result;
}

}  // namespace serrewt
