#include <gtest/gtest.h>

#include "serrewt/finite_field.hpp"

using namespace serrewt;

namespace {

struct Shape {
  int p;
  int degree;
};

const Shape kShapes[] = {{2, 1}, {2, 3}, {2, 6}, {3, 1}, {3, 2}, {3, 4}, {5, 2}, {7, 2}};

}  // namespace

TEST(FiniteField, FieldAxiomsExhaustive) {
  for (const auto [p, r] : kShapes) {
    const FiniteField F(p, r);
    const auto q = F.size();
    ASSERT_EQ(q, ipow(p, static_cast<unsigned>(r)).convert_to<std::uint32_t>());
    for (FiniteField::Elem a = 0; a < q; ++a) {
      EXPECT_EQ(F.add(a, F.neg(a)), 0U);
      EXPECT_EQ(F.add(a, 0), a);
      EXPECT_EQ(F.mul(a, 1), a);
      if (a != 0) EXPECT_EQ(F.mul(a, F.inv(a)), 1U);
      // p a = 0 and a^q = a
      FiniteField::Elem acc = 0;
      for (int k = 0; k < p; ++k) acc = F.add(acc, a);
      EXPECT_EQ(acc, 0U);
      EXPECT_EQ(F.pow(a, q), a);
    }
  }
}

TEST(FiniteField, DistributiveOnSamples) {
  const FiniteField F(3, 3);
  for (FiniteField::Elem a = 0; a < F.size(); a += 2)
    for (FiniteField::Elem b = 0; b < F.size(); b += 3)
      for (FiniteField::Elem c = 0; c < F.size(); c += 5) {
        EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
        EXPECT_EQ(F.add(F.add(a, b), c), F.add(a, F.add(b, c)));
      }
}

TEST(FiniteField, GeneratorIsPrimitiveRootOfModulus) {
  for (const auto [p, r] : kShapes) {
    const FiniteField F(p, r);
    EXPECT_EQ(F.order(F.generator()), F.unit_order());
    EXPECT_EQ(F.eval_monic(F.modulus(), F.generator()), 0U);
    EXPECT_EQ(F.modulus().size(), static_cast<std::size_t>(r));
  }
}

TEST(FiniteField, LeastPrimitiveModulus) {
  EXPECT_EQ(FiniteField(2, 2).modulus(), (std::vector<int>{1, 1}));  // x^2 + x + 1
  EXPECT_EQ(FiniteField(2, 3).modulus(), (std::vector<int>{1, 1, 0}));  // x^3 + x + 1
  EXPECT_EQ(FiniteField(3, 2).modulus(), (std::vector<int>{2, 1}));  // x^2 + x + 2
  EXPECT_EQ(FiniteField(3, 1).modulus(), (std::vector<int>{1}));  // x + 1, root -1
}

TEST(FiniteField, LogExpRoundTrip) {
  const FiniteField F(5, 2);
  for (FiniteField::Elem a = 1; a < F.size(); ++a) EXPECT_EQ(F.exp(F.log(a)), a);
  EXPECT_EQ(F.pow(F.generator(), -1), F.inv(F.generator()));
  EXPECT_EQ(F.from_int(-1), 4U);
  EXPECT_EQ(F.to_string(0), "0");
  EXPECT_EQ(F.to_string(F.generator()), "g^1");
}

TEST(FiniteField, RejectsBadShapes) {
  EXPECT_THROW(FiniteField(4, 1), Error);
  EXPECT_THROW(FiniteField(3, 0), Error);
  EXPECT_THROW(FiniteField(2, 23), Error);
}

TEST(FiniteField, SubfieldEmbedding) {
  const FiniteField big(3, 4);
  const FiniteField small(3, 2);
  const auto k = subfield_generator_log(big, small);
  const auto image = big.exp(static_cast<long long>(k));
  EXPECT_EQ(big.order(image), small.unit_order());
  EXPECT_EQ(big.eval_monic(small.modulus(), image), 0U);
  // the embedding respects addition
  for (std::uint32_t i = 0; i < small.unit_order(); ++i) {
    for (std::uint32_t j = 0; j < small.unit_order(); ++j) {
      const auto s = small.add(small.exp(i), small.exp(j));
      const auto lhs = s == 0 ? 0U : big.pow(image, small.log(s));
      EXPECT_EQ(lhs, big.add(big.pow(image, i), big.pow(image, j)));
    }
  }
  EXPECT_THROW(subfield_generator_log(FiniteField(3, 3), small), Error);
}
