#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "trifield/carrier.hpp"
#include "trifield/iso.hpp"
#include "trifield/poly_fields.hpp"
#include "trifield/ring.hpp"

using namespace trifield;

namespace {

std::uint64_t value(const FiniteThreeField& f, Elem e) { return std::stoull(f.label(e)); }

}  // namespace

TEST(Zodd, TablesMatchResidueArithmetic) {
  for (unsigned n = 1; n <= 5; ++n) {
    const FiniteThreeField f = zodd(n);
    const std::uint64_t m = 1u << n;
    ASSERT_EQ(f.size(), m / 2);
    for (Elem a = 0; a < f.size(); ++a)
      for (Elem b = 0; b < f.size(); ++b) {
        EXPECT_EQ(value(f, f.mul(a, b)), value(f, a) * value(f, b) % m);
        for (Elem c = 0; c < f.size(); ++c)
          EXPECT_EQ(value(f, f.nu(a, b, c)), (value(f, a) + value(f, b) + value(f, c)) % m);
      }
  }
}

TEST(Zodd, PassesAxiomSuite) {
  for (unsigned n = 1; n <= 4; ++n) {
    const FiniteThreeField f = zodd(n);
    EXPECT_TRUE(check_ternary_group(f.carrier()).pass) << n;
    EXPECT_TRUE(check_distributivity(f.carrier()).pass) << n;
    EXPECT_TRUE(check_field_axioms(f).pass) << n;
    const auto d = detect_derived_structure(f.carrier());
    ASSERT_TRUE(d.unit.has_value());
    EXPECT_EQ(f.label(*d.unit), "1");
    EXPECT_FALSE(d.zero.has_value());
  }
}

TEST(Zodd, InversesAreModularInverses) {
  const FiniteThreeField f = zodd(5);
  for (Elem a = 0; a < f.size(); ++a) EXPECT_EQ(value(f, a) * value(f, f.inverse(a)) % 32, 1u);
}

TEST(Carrier, QuerelementSolvesNu) {
  const FiniteThreeField f = zodd(3);
  for (Elem x = 0; x < f.size(); ++x) {
    const Elem q = quer_add(f.carrier(), x);
    EXPECT_EQ(f.nu(x, x, q), x);
    // x + x + q = x means q = -x mod 8
    EXPECT_EQ(value(f, q), (8 - value(f, x)) % 8);
  }
}

TEST(Carrier, AllResiduesHaveAZero) {
  std::vector<unsigned> values{0, 1, 2, 3, 4, 5, 6, 7};
  auto c = carrier_from_values(
      values, [](unsigned a, unsigned b, unsigned d) { return (a + b + d) % 8; },
      [](unsigned a, unsigned b) { return a * b % 8; }, [](unsigned v) { return std::to_string(v); });
  EXPECT_TRUE(check_ternary_group(c).pass);
  const auto d = detect_derived_structure(c);
  ASSERT_TRUE(d.zero.has_value());
  EXPECT_EQ(c.label(*d.zero), "0");
  EXPECT_THROW(FiniteThreeField(c, 1), PreconditionError);
}

TEST(Carrier, EvenResiduesAreNotClosed) {
  std::vector<unsigned> values{0, 2};
  auto c = carrier_from_values(
      values, [](unsigned a, unsigned b, unsigned d) { return (a + b + d + 1) % 8; },
      [](unsigned a, unsigned b) { return a * b % 8; }, [](unsigned v) { return std::to_string(v); });
  const Verdict v = check_closure(c);
  EXPECT_FALSE(v.pass);
  EXPECT_FALSE(c.outside_nu.empty());
}

TEST(Carrier, NonAssociativeNuIsRejected) {
  std::vector<unsigned> values{0, 1, 2};
  auto c = carrier_from_values(
      values, [](unsigned a, unsigned b, unsigned d) { return (2 * a + b + d) % 3; },
      [](unsigned a, unsigned b) { return a * b % 3; }, [](unsigned v) { return std::to_string(v); });
  EXPECT_FALSE(check_ternary_group(c).pass);
}

TEST(Carrier, NonDistributiveProductIsRejected) {
  std::vector<unsigned> values{1, 3, 5, 7};
  auto c = carrier_from_values(
      values, [](unsigned a, unsigned b, unsigned d) { return (a + b + d) % 8; },
      [](unsigned a, unsigned b) { return a == 1 ? b : b == 1 ? a : (a * b * b) % 8; },
      [](unsigned v) { return std::to_string(v); });
  EXPECT_TRUE(check_ternary_group(c).pass);
  EXPECT_FALSE(check_distributivity(c).pass);
}

TEST(Carrier, LimitsGuardExhaustiveChecks) {
  Limits small;
  small.max_carrier = 4;
  EXPECT_THROW(check_ternary_group(zodd(4).carrier(), small), LimitError);
  EXPECT_NO_THROW(check_ternary_group(zodd(3).carrier(), small));
}

TEST(Carrier, EnvironmentOverridesCap) {
  ::setenv("TERNARY_MAX_CARRIER", "7", 1);
  const Limits l = Limits::from_env();
  ::unsetenv("TERNARY_MAX_CARRIER");
  EXPECT_EQ(l.max_carrier, 7u);
  EXPECT_EQ(l.max_ring, 14u);
}

TEST(Carrier, TwistedCosetIsProper) {
  const QuotientField q = f0({3});
  const FiniteThreeField& f = q.field();
  const Elem one = f.one(), x = q.generator(0), x2 = q.element("x^2");
  const ProperThreeThreeField p = twisted_coset(f, {one, x2}, x);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_TRUE(check_ternary_group(p.carrier()).pass);
  EXPECT_FALSE(detect_derived_structure(p.carrier()).unit.has_value());
  EXPECT_THROW(twisted_coset(f, {one, x2}, x2), PreconditionError);
}

TEST(Ring, ZmodIdeals) {
  const FiniteRing z8 = zmod_ring(8);
  EXPECT_TRUE(check_ring_axioms(z8).pass);
  const auto ideals = enumerate_ideals(z8);
  EXPECT_EQ(ideals.size(), 4u);  // 0, (4), (2), Z/8
  const auto maxi = maximal_ideals(z8);
  ASSERT_EQ(maxi.size(), 1u);
  EXPECT_EQ(maxi[0].count(), 4u);
  for (Elem e : maxi[0].elements()) EXPECT_EQ(std::stoi(z8.label(e)) % 2, 0);
}

TEST(Ring, ZmodNonLocal) {
  const FiniteRing z6 = zmod_ring(6);
  EXPECT_EQ(maximal_ideals(z6).size(), 2u);
}

TEST(Ring, UnitsOfZ8AreZodd3) {
  const FiniteThreeField u = units_as_3field(zmod_ring(8));
  EXPECT_EQ(u.size(), 4u);
  EXPECT_TRUE(find_isomorphism(u, zodd(3)).has_value());
}

TEST(Iso, DifferentCharacteristicsAreNotIsomorphic) {
  // 1+1+1 = 3 in (Z/4)^odd but 1+1+1 = 1 in F0(2)
  EXPECT_FALSE(find_isomorphism(zodd(2), f0({2}).field()).has_value());
}

TEST(Iso, FoundMapsAreBijectiveMorphisms) {
  const FiniteThreeField a = f0({4}).field();
  const FiniteThreeField b = f0({4}).field();
  const auto iso = find_isomorphism(a, b);
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(is_bijection(*iso, b.size()));
  EXPECT_TRUE(is_field_morphism(a, b, *iso));
}

TEST(Iso, GeneratedSubfields) {
  EXPECT_EQ(generated_subfield(zodd(4), {}).count(), 8u);
  const QuotientField q = f0({3});
  EXPECT_EQ(generated_subfield(q.field(), {}).count(), 1u);
  EXPECT_EQ(generated_subfield(q.field(), {q.generator(0)}).count(), 4u);
  EXPECT_EQ(generated_subfield(q.field(), {q.element("x^2")}).count(), 2u);
}

TEST(Property, RandomTriplesSatisfyDistributivity) {
  const FiniteThreeField f = zodd(6);
  std::mt19937 rng(7);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(f.size() - 1));
  for (int i = 0; i < 2000; ++i) {
    const Elem a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
    EXPECT_EQ(f.mul(a, f.nu(b, c, d)), f.nu(f.mul(a, b), f.mul(a, c), f.mul(a, d)));
    EXPECT_EQ(f.nu(a, b, c), f.nu(c, a, b));
  }
}
