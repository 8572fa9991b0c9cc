#include <gtest/gtest.h>

#include "brute_force.hpp"
#include "serrewt/cohomology.hpp"

using namespace serrewt;

namespace {

CharacterData sig(const FieldParams& params, std::vector<int> digits, bool cyclotomic = false,
                  UnramifiedPart u = {}) {
  return CharacterData(params, TameSignature(params, std::move(digits)), u, false, cyclotomic);
}

std::vector<std::pair<Rational, int>> flatten(const JumpProfile& jp) {
  std::vector<std::pair<Rational, int>> out;
  for (const auto& e : jp.entries) out.emplace_back(e.s, e.dim);
  return out;
}

}  // namespace

TEST(H1Dimension, CaseTable) {
  const FieldParams p3e1f2(3, 1, 2);
  EXPECT_EQ(h1_dimension(p3e1f2, sig(p3e1f2, {1, 2}, false, {2, 3})), 2);
  const FieldParams p3e1f1(3, 1, 1);
  EXPECT_EQ(h1_dimension(p3e1f1, sig(p3e1f1, {1}, true)), 2);
  const FieldParams p2(2, 1, 1);
  EXPECT_EQ(h1_dimension(p2, CharacterData(p2, trivial_signature(p2), {}, true, true)), 3);
  EXPECT_EQ(h1_dimension(p3e1f1, trivial_character(p3e1f1)), 2);
  EXPECT_EQ(h1_dimension(p3e1f1, sig(p3e1f1, {2}, false, {1, 1})), 1);
}

TEST(GradedDimension, WorkedValues) {
  const FieldParams p3e1f2(3, 1, 2);
  EXPECT_EQ(graded_dimension(p3e1f2, sig(p3e1f2, {1, 2}), 1 + Rational(7, 8)), 1);
  EXPECT_EQ(graded_dimension(p3e1f2, sig(p3e1f2, {1, 2}), Rational(1, 2)), 0);
  const FieldParams p3e1f1(3, 1, 1);
  EXPECT_EQ(graded_dimension(p3e1f1, trivial_character(p3e1f1), Rational(0)), 1);
  EXPECT_EQ(graded_dimension(p3e1f1, sig(p3e1f1, {1}), Rational(0)), 0);
  EXPECT_EQ(graded_dimension(p3e1f1, sig(p3e1f1, {1}, true), Rational(5, 2)), 1);
  EXPECT_EQ(graded_dimension(p3e1f1, sig(p3e1f1, {1}), Rational(5, 2)), 0);
}

TEST(GradedDimension, ZeroWhenPDividesM) {
  const FieldParams params(3, 2, 2);
  for (const auto& a : brute::all_signatures(3, 2)) {
    const auto chi = sig(params, a);
    for (Integer m = 3; m < params.window_top(); m += 3) {
      EXPECT_EQ(graded_dimension(params, chi, 1 + Rational(m, params.q_minus_one())), 0);
    }
  }
}

TEST(JumpProfile, WorkedValues) {
  const FieldParams p3e1f1(3, 1, 1);
  EXPECT_EQ(flatten(jump_profile(p3e1f1, sig(p3e1f1, {1}, true))),
            (std::vector<std::pair<Rational, int>>{{Rational(3, 2), 1}, {Rational(5, 2), 1}}));
  EXPECT_EQ(flatten(jump_profile(p3e1f1, trivial_character(p3e1f1))),
            (std::vector<std::pair<Rational, int>>{{Rational(0), 1}, {Rational(2), 1}}));
  const FieldParams p3e1f2(3, 1, 2);
  const auto jp = jump_profile(p3e1f2, sig(p3e1f2, {1, 2}));
  EXPECT_EQ(flatten(jp), (std::vector<std::pair<Rational, int>>{{1 + Rational(5, 8), 1}, {1 + Rational(7, 8), 1}}));
  EXPECT_EQ(jp.total, 2);
}

TEST(JumpProfile, AgreesWithGradedDimensionEverywhere) {
  for (int p : {2, 3, 5}) {
    for (int e = 1; e <= 2; ++e) {
      for (int f = 1; f <= 2; ++f) {
        const FieldParams params(p, e, f);
        for (const auto& a : brute::all_signatures(p, f)) {
          const auto chi = sig(params, a);
          const auto jp = jump_profile(params, chi);
          // scan every s = 1 + m/(p^f-1) in the open range and compare
          std::map<Integer, int> scanned;
          for (Integer m = 1; m < params.window_top(); ++m) {
            const int d = graded_dimension(params, chi, 1 + Rational(m, params.q_minus_one()));
            if (d > 0) scanned[m] = d;
          }
          EXPECT_EQ(scanned, wild_jumps(params, chi));
          EXPECT_EQ(jp.total, h1_dimension(params, chi));
        }
      }
    }
  }
}

TEST(WindowCardinality, WorkedValues) {
  const FieldParams p3e1f2(3, 1, 2);
  EXPECT_EQ(window_cardinality(p3e1f2, sig(p3e1f2, {1, 2}), 0), 2);
  const FieldParams p3e2f1(3, 2, 1);
  EXPECT_EQ(window_cardinality(p3e2f1, sig(p3e2f1, {1}), 0), 1);
  EXPECT_EQ(window_cardinality(p3e2f1, sig(p3e2f1, {1}), 1), 1);
  const FieldParams p2(2, 1, 1);
  EXPECT_EQ(window_cardinality(p2, sig(p2, {1}), 0), 1);
}

TEST(WindowCardinality, OutOfRange) {
  const FieldParams params(3, 2, 1);
  try {
    window_cardinality(params, sig(params, {1}), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
  EXPECT_THROW(window_cardinality(params, sig(params, {1}), -1), Error);
}

TEST(WindowCardinality, MatchesScanAndEqualsF) {
  for (int p : {2, 3, 5, 7}) {
    for (int e = 1; e <= 3; ++e) {
      for (int f = 1; f <= 3; ++f) {
        const FieldParams params(p, e, f);
        if (params.q_minus_one() > 400) continue;
        for (const auto& a : brute::all_signatures(p, f)) {
          const auto chi = sig(params, a);
          const auto n = n_values(params, chi.signature());
          for (int j = 0; j < e; ++j) {
            EXPECT_EQ(window_cardinality(params, chi, j), brute::brute_window(params, n, j));
            EXPECT_EQ(window_cardinality(params, chi, j), f);
          }
        }
      }
    }
  }
}

TEST(WildJumps, SizeIsFOverNiveau) {
  for (int p : {2, 3, 5}) {
    for (int f = 1; f <= 4; ++f) {
      const FieldParams params(p, 2, f);
      if (params.q_minus_one() > 700) continue;
      for (const auto& a : brute::all_signatures(p, f)) {
        const auto chi = sig(params, a);
        const auto [f1, f2] = niveau(chi.signature());
        for (const auto& [m, d] : wild_jumps(params, chi)) EXPECT_EQ(d, f2);
      }
    }
  }
}
