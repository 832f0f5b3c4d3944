#include <gtest/gtest.h>

#include "trifield/iso.hpp"
#include "trifield/poly_fields.hpp"

using namespace trifield;

namespace {

// x-basis coordinates of an F0(n) element packed as a GF(2) bitmask.
std::uint64_t mask(const QuotientField& q, Elem e) {
  std::uint64_t m = 0;
  const auto& xs = q.x_coordinates(e);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] & 1) m |= std::uint64_t{1} << i;
  return m;
}

// Carry-less product reduced mod (x+1)^n by long division.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, unsigned n) {
  std::uint64_t p = 0;
  for (int i = 0; i < 32; ++i)
    if ((b >> i) & 1) p ^= a << i;
  std::uint64_t m = 1;
  for (unsigned i = 0; i < n; ++i) m ^= m << 1;  // (x+1)^n
  for (int d = 63; d >= static_cast<int>(n); --d)
    if ((p >> d) & 1) p ^= m << (d - n);
  return p;
}

}  // namespace

TEST(F0, SizesArePowersOfTwo) {
  for (unsigned n = 1; n <= 7; ++n) {
    const QuotientField q = f0({n});
    EXPECT_EQ(q.size(), std::size_t{1} << (n - 1));
    EXPECT_EQ(cardinality(q.spec()), BigInt(1) << (n - 1));
    EXPECT_EQ(q.spec().name(), "F0(" + std::to_string(n) + ")");
  }
  EXPECT_EQ(f0({2, 2}).size(), 8u);
  EXPECT_EQ(f0({2, 3}).size(), 32u);
}

TEST(F0, ProductMatchesGf2Reduction) {
  for (unsigned n : {2u, 3u, 5u}) {
    const QuotientField q = f0({n});
    const FiniteThreeField& f = q.field();
    for (Elem a = 0; a < f.size(); ++a) {
      EXPECT_EQ(__builtin_popcountll(mask(q, a)) % 2, 1);
      for (Elem b = 0; b < f.size(); ++b) {
        EXPECT_EQ(mask(q, f.mul(a, b)), mulmod(mask(q, a), mask(q, b), n));
        for (Elem c = 0; c < f.size(); c += 3)
          EXPECT_EQ(mask(q, f.nu(a, b, c)), mask(q, a) ^ mask(q, b) ^ mask(q, c));
      }
    }
  }
}

TEST(F0, AxiomsHoldAndGeneratorIsX) {
  const QuotientField q = f0({4});
  EXPECT_TRUE(check_field_axioms(q.field()).pass);
  EXPECT_EQ(mask(q, q.generator(0)), 0b10u);
  EXPECT_EQ(q.element("x^3"), q.field().mul(q.generator(0), q.element("x^2")));
  EXPECT_EQ(generated_subfield(q.field(), {q.generator(0)}).count(), q.size());
}

TEST(ZoddBase, OneVariableOfExponentOneIsZodd) {
  for (unsigned m = 1; m <= 4; ++m) {
    const QuotientField q = build_quotient_field({m, {1}, {}});
    EXPECT_TRUE(find_isomorphism(q.field(), zodd(m)).has_value()) << m;
    EXPECT_EQ(cardinality(q.spec()), BigInt(1) << (m - 1));
  }
  const QuotientField q = build_quotient_field({2, {2}, {}});
  EXPECT_EQ(q.size(), 8u);
  EXPECT_TRUE(check_field_axioms(q.field()).pass);
  EXPECT_EQ(prime_subfield(q.field()).zodd_exponent, 2u);
}

TEST(Relations, ExtraRelationCutsSize) {
  // F0(2,2) / <x1 - x2> identifies the generators, leaving F0(2)
  const QuotientFieldSpec s{1, {2, 2}, {"x1 - x2"}};
  EXPECT_EQ(cardinality(s), BigInt(2));
  const QuotientField q = build_quotient_field(s);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_TRUE(find_isomorphism(q.field(), f0({2}).field()).has_value());
}

TEST(Relations, SingleModulus) {
  const QuotientField q = build_quotient_field({1, {0}, {"x^4 + 1"}});
  EXPECT_TRUE(find_isomorphism(q.field(), f0({4}).field()).has_value());
  EXPECT_THROW(build_quotient_field({1, {0}, {"x^6 + 1"}}), NotCompletelyEvenError);
  EXPECT_THROW(cardinality({1, {0}, {"x^3 + 1"}}), NotCompletelyEvenError);
}

TEST(Reduction, IsAnEpimorphism) {
  const QuotientField a = f0({5}), b = f0({3});
  const auto map = reduction_map(a, b);
  EXPECT_TRUE(is_field_morphism(a.field(), b.field(), map));
  EXPECT_EQ(std::set<Elem>(map.begin(), map.end()).size(), b.size());
}

TEST(Products, LabelsAndComponentwiseOperations) {
  const FiniteThreeField a = zodd(2), b = f0({2}).field();
  const FiniteThreeField p = product_field({&a, &b});
  ASSERT_EQ(p.size(), 4u);
  EXPECT_TRUE(check_field_axioms(p).pass);
  EXPECT_EQ(p.label(p.one()), "(1,1)");
  EXPECT_EQ(prime_subfield(p).characteristic, 2u);
  const FiniteThreeField c = f0({2}).field();
  const FiniteThreeField cc = product_field({&c, &c});
  // the cross relation (x1-1)(x2-1) = 0 halves the free field F0(2,2)
  const QuotientField cross = build_quotient_field({1, {2, 2}, {"(x1-1)*(x2-1)"}});
  EXPECT_TRUE(find_isomorphism(cc, cross.field()).has_value());
  const auto pres = product_presentation({&c, &c}, cc);
  EXPECT_TRUE(pres.generates);
  EXPECT_TRUE(pres.cross_relations_hold);
  EXPECT_EQ(pres.nilpotency, (std::vector<unsigned>{2, 2}));
  EXPECT_EQ(pres.free_size, 8u);
  EXPECT_FALSE(pres.isomorphic_to_free);
}

TEST(PrimeField, CharacteristicOfZoddAndF0) {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto p = prime_subfield(zodd(n));
    EXPECT_EQ(p.characteristic, std::size_t{1} << (n - 1));
    EXPECT_EQ(p.zodd_exponent, n);
  }
  const auto p = prime_subfield(f0({4}).field());
  EXPECT_EQ(p.characteristic, 1u);
  EXPECT_EQ(p.zodd_exponent, 1u);
}

TEST(Limits, MaterializationCapIsEnforced) {
  Limits small;
  small.max_materialize = 16;
  EXPECT_THROW(f0({6}, small), LimitError);
  EXPECT_NO_THROW(cardinality(QuotientFieldSpec::f0({40})));
}
