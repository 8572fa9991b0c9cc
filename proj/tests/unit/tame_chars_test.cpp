#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "serrewt/tame_chars.hpp"

using namespace serrewt;

namespace {

std::vector<int> sig_of(const FieldParams& params, std::vector<long long> exps) {
  return canonical_signature(params, std::span<const long long>(exps)).digits();
}

CharacterData chi_exps(const FieldParams& params, std::vector<long long> exps, UnramifiedPart u = {}) {
  return character_from_exps(params, std::span<const long long>(exps), u);
}

}  // namespace

TEST(FieldParams, RejectsBadInput) {
  EXPECT_THROW(FieldParams(4, 1, 1), Error);
  EXPECT_THROW(FieldParams(3, 0, 1), Error);
  EXPECT_THROW(FieldParams(3, 1, 0), Error);
  EXPECT_THROW(FieldParams(3, 1, 21), Error);
  try {
    FieldParams(9, 1, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(FieldParams, BigIntegerDerivedQuantities) {
  const FieldParams params(4093, 7, 20);
  EXPECT_EQ(params.q_minus_one(), ipow(4093, 20) - 1);
  EXPECT_EQ(params.window_top(), params.q_minus_one() / 4092 * 4093 * 7);
}

TEST(CanonicalSignature, WorkedValues) {
  const FieldParams params(3, 1, 2);
  EXPECT_EQ(sig_of(params, {2, 1}), (std::vector<int>{2, 1}));
  EXPECT_EQ(sig_of(params, {0, 0}), (std::vector<int>{2, 2}));
  EXPECT_EQ(sig_of(params, {3, 0}), (std::vector<int>{2, 3}));
}

TEST(CanonicalSignature, LengthMismatch) {
  const FieldParams params(3, 1, 2);
  try {
    sig_of(params, {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(CanonicalSignature, MatchesExhaustiveSearch) {
  for (int p : {2, 3, 5, 7}) {
    for (int f = 1; f <= 3; ++f) {
      const FieldParams params(p, 1, f);
      for (long long cls = 0; cls < to_ll(params.q_minus_one()); ++cls) {
        EXPECT_EQ(signature_from_class(params, cls).digits(), brute::brute_signature(params, cls))
            << params.to_string() << " class " << cls;
      }
    }
  }
}

TEST(CanonicalSignature, IdentityThroughOwnN0) {
  for (int p : {2, 3, 5}) {
    for (int f = 1; f <= 3; ++f) {
      const FieldParams params(p, 1, f);
      for (const auto& a : brute::all_signatures(p, f)) {
        const TameSignature sig(params, a);
        std::vector<long long> exps(static_cast<std::size_t>(f), 0);
        exps[0] = to_ll(n_values(params, sig)[0]);
        EXPECT_EQ(canonical_signature(params, std::span<const long long>(exps)), sig);
      }
    }
  }
}

TEST(CanonicalSignature, RotationEquivariance) {
  std::mt19937 rng(7);
  for (int p : {2, 3, 5}) {
    for (int f = 1; f <= 4; ++f) {
      const FieldParams params(p, 1, f);
      std::uniform_int_distribution<long long> dist(-30, 30);
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<long long> exps(static_cast<std::size_t>(f));
        for (auto& x : exps) x = dist(rng);
        std::vector<long long> rotated(exps.size());
        for (int i = 0; i < f; ++i) rotated[static_cast<std::size_t>(i)] = exps[static_cast<std::size_t>((i + 1) % f)];
        EXPECT_EQ(canonical_signature(params, std::span<const long long>(rotated)),
                  canonical_signature(params, std::span<const long long>(exps)).rotated(1));
      }
    }
  }
}

TEST(TameSignature, Validation) {
  const FieldParams params(3, 1, 2);
  try {
    TameSignature(params, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvariantError);
    EXPECT_NE(std::string(e.what()).find("signature digit out of [1,p]"), std::string::npos);
  }
  EXPECT_THROW(TameSignature(params, {3, 3}), Error);
  EXPECT_THROW(TameSignature(params, {1}), Error);
}

TEST(NValues, WorkedValues) {
  const FieldParams p3f2(3, 1, 2);
  EXPECT_EQ(n_values(p3f2, TameSignature(p3f2, {1, 2})), (std::vector<Integer>{7, 5}));
  EXPECT_EQ(n_values(p3f2, TameSignature(p3f2, {2, 2})), (std::vector<Integer>{8, 8}));
  const FieldParams p3f1(3, 1, 1);
  EXPECT_EQ(n_values(p3f1, TameSignature(p3f1, {1})), (std::vector<Integer>{1}));
}

TEST(NValues, DisplayedSumRangeAndFrobenius) {
  std::mt19937 rng(11);
  for (int p : {2, 3, 5, 7}) {
    for (int f = 1; f <= 5; ++f) {
      const FieldParams params(p, 1, f);
      std::uniform_int_distribution<int> digit(1, p);
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<int> a(static_cast<std::size_t>(f));
        for (auto& x : a) x = digit(rng);
        if (std::all_of(a.begin(), a.end(), [p](int x) { return x == p; })) continue;
        const TameSignature sig(params, a);
        const auto n = n_values(params, sig);
        const auto [f1, f2] = niveau(sig);
        for (int i = 0; i < f; ++i) {
          EXPECT_EQ(n[static_cast<std::size_t>(i)], brute::raw_n(params, a, i));
          EXPECT_GE(n[static_cast<std::size_t>(i)], params.base_window());
          EXPECT_LT(n[static_cast<std::size_t>(i)], params.window_width());
          EXPECT_EQ(floor_mod(n[static_cast<std::size_t>(i)] - ipow(p, static_cast<unsigned>(i)) * n[0],
                              params.q_minus_one()),
                    0);
          for (int j = 0; j < i; ++j) {
            if (f1 == f) {
              EXPECT_NE(n[static_cast<std::size_t>(i)], n[static_cast<std::size_t>(j)]);
            }
          }
        }
      }
    }
  }
}

TEST(Niveau, WorkedValues) {
  const FieldParams p3f2(3, 1, 2);
  EXPECT_EQ(niveau(TameSignature(p3f2, {1, 2})), std::make_pair(2, 1));
  EXPECT_EQ(niveau(TameSignature(p3f2, {2, 2})), std::make_pair(1, 2));
  const FieldParams p3f4(3, 1, 4);
  EXPECT_EQ(niveau(TameSignature(p3f4, {1, 2, 1, 2})), std::make_pair(2, 2));
}

TEST(CharQuotient, WorkedValues) {
  const FieldParams params(3, 1, 2);
  const auto q = char_quotient(params, chi_exps(params, {2, 1}), chi_exps(params, {0, 0}));
  EXPECT_EQ(q.signature().digits(), (std::vector<int>{2, 1}));
  EXPECT_TRUE(q.unram().is_trivial());
  EXPECT_EQ(char_quotient(params, chi_exps(params, {0, 1}), chi_exps(params, {1, 0})).signature().digits(),
            (std::vector<int>{1, 3}));
}

TEST(CharQuotient, SelfQuotientIsTrivial) {
  const FieldParams params(5, 2, 2);
  const auto chi = chi_exps(params, {3, 1}, {2, 7});
  const auto q = char_quotient(params, chi, chi);
  EXPECT_TRUE(q.is_trivial());
  EXPECT_EQ(q.signature(), trivial_signature(params));
}

TEST(CharQuotient, ByTrivialIsIdentity) {
  const FieldParams params(3, 2, 3);
  for (const auto& a : brute::all_signatures(3, 3)) {
    const CharacterData chi(params, TameSignature(params, a), {2, 5});
    EXPECT_EQ(char_quotient(params, chi, trivial_character(params)), chi);
  }
}

TEST(CharQuotient, UnramifiedArithmetic) {
  const FieldParams params(3, 1, 1);
  const auto q = char_quotient(params, chi_exps(params, {1}, {2, 3}), chi_exps(params, {0}, {2, 5}));
  EXPECT_EQ(q.unram().degree, 2);
  EXPECT_EQ(q.unram().dlog, 6U);
  EXPECT_THROW(char_quotient(params, chi_exps(params, {1}, {2, 3}), chi_exps(params, {0}, {1, 1})), Error);
}

TEST(CyclotomicSignature, WorkedValues) {
  EXPECT_EQ(cyclotomic_inertia_signature(FieldParams(3, 1, 2)).digits(), (std::vector<int>{1, 1}));
  EXPECT_EQ(cyclotomic_inertia_signature(FieldParams(3, 2, 1)).digits(), (std::vector<int>{2}));
  EXPECT_EQ(cyclotomic_inertia_signature(FieldParams(2, 1, 1)).digits(), (std::vector<int>{1}));
}

TEST(CyclotomicSignature, CoincidesWithTrivialForPTwo) {
  for (int e = 1; e <= 4; ++e)
    for (int f = 1; f <= 4; ++f) {
      const FieldParams params(2, e, f);
      EXPECT_EQ(cyclotomic_inertia_signature(params), trivial_signature(params));
      const CharacterData both(params, trivial_signature(params), {}, true, true);
      EXPECT_TRUE(both.is_trivial());
      EXPECT_TRUE(both.is_cyclotomic());
    }
}

TEST(CharacterData, FlagsAreChecked) {
  const FieldParams params(3, 1, 2);
  EXPECT_THROW(CharacterData(params, TameSignature(params, {1, 2}), {}, true, false), Error);
  EXPECT_THROW(CharacterData(params, TameSignature(params, {2, 2}), {1, 1}, true, false), Error);
  EXPECT_THROW(CharacterData(params, TameSignature(params, {1, 2}), {}, false, true), Error);
  EXPECT_NO_THROW(CharacterData(params, TameSignature(params, {1, 1}), {1, 1}, false, true));
  EXPECT_THROW(CharacterData(params, TameSignature(params, {1, 1}), {1, 2}), Error);
}

TEST(LowDigits, RoundTripAndRange) {
  for (int p : {2, 3, 5}) {
    for (int f = 1; f <= 3; ++f) {
      const FieldParams params(p, 1, f);
      for (const auto& a : brute::all_signatures(p, f)) {
        const TameSignature sig(params, a);
        const auto m = low_digit_exponents(params, sig);
        EXPECT_FALSE(std::all_of(m.begin(), m.end(), [p](int x) { return x == p - 1; }));
        for (int x : m) {
          EXPECT_GE(x, 0);
          EXPECT_LE(x, p - 1);
        }
        EXPECT_EQ(canonical_signature(params, std::span<const int>(m)), sig);
      }
      EXPECT_EQ(low_digit_exponents(params, trivial_signature(params)), std::vector<int>(static_cast<std::size_t>(f), 0));
    }
  }
}
