#include <gtest/gtest.h>

#include <set>

#include "trifield/envelope.hpp"
#include "trifield/poly_fields.hpp"

using namespace trifield;

namespace {

long long num(const FiniteRing& r, Elem e) { return std::stoll(r.label(e)); }

}  // namespace

// Over (Z/2^n)^odd the envelope labels are residues, so Z/2^n arithmetic on
// the labels is an independent oracle for the case-split operations.
TEST(Envelope, ResidueEnvelopeIsZmod) {
  for (unsigned n = 1; n <= 5; ++n) {
    const EnvelopeRing u = build_envelope(zodd(n));
    const FiniteRing& r = u.ring();
    const long long m = 1ll << n;
    ASSERT_EQ(static_cast<long long>(r.size()), m);
    std::set<long long> seen;
    for (Elem a = 0; a < r.size(); ++a) {
      seen.insert(num(r, a));
      EXPECT_EQ(num(r, a) % 2 == 1, u.is_odd(a));
      for (Elem b = 0; b < r.size(); ++b) {
        EXPECT_EQ(num(r, r.add(a, b)), (num(r, a) + num(r, b)) % m);
        EXPECT_EQ(num(r, r.mul(a, b)), num(r, a) * num(r, b) % m);
      }
    }
    EXPECT_EQ(static_cast<long long>(seen.size()), m);
    EXPECT_EQ(num(r, r.zero()), 0);
    EXPECT_TRUE(u.axioms_verified());
  }
}

TEST(Envelope, SizeIsTwiceTheField) {
  for (const auto& ns : std::vector<std::vector<unsigned>>{{1}, {3}, {5}, {2, 2}}) {
    const QuotientField q = f0(ns);
    EXPECT_EQ(build_envelope(q.field()).size(), 2 * q.size());
  }
}

TEST(Envelope, LocalWithEvenPartMaximal) {
  for (const auto& ns : std::vector<std::vector<unsigned>>{{1}, {2}, {4}, {2, 2}}) {
    const EnvelopeRing u = build_envelope(f0(ns).field());
    const LocalReport r = verify_local(u);
    EXPECT_EQ(r.maximal_ideals.size(), 1u);
    EXPECT_EQ(r.residue_size, 2u);
    EXPECT_TRUE(r.unique_equals_even_part);
  }
}

TEST(Envelope, PairsActAsTranslations) {
  const FiniteThreeField f = zodd(3);
  const EnvelopeRing u = build_envelope(f);
  for (Elem a = 0; a < f.size(); ++a) {
    const Pair p{a};
    for (Elem x = 0; x < f.size(); ++x) {
      // q_{a,1}(x) = x + a + 1, and in U that is the sum x + q
      EXPECT_EQ(pair_action(f, p, x), u.ring().add(u.odd(x), u.pair(p)));
    }
    for (Elem b = 0; b < f.size(); ++b) {
      EXPECT_EQ(u.pair(pair_add(f, p, Pair{b})), u.ring().add(u.pair(p), u.pair(Pair{b})));
      EXPECT_EQ(u.pair(pair_mul(f, p, Pair{b})), u.ring().mul(u.pair(p), u.pair(Pair{b})));
      EXPECT_EQ(u.pair(standard_form(f, a, b)), u.ring().add(u.odd(a), u.odd(b)));
    }
  }
  EXPECT_EQ(u.pair(pair_zero(f)), u.ring().zero());
}

TEST(Envelope, LiftedReductionHasKernelTwo) {
  const QuotientField q3 = f0({3}), q2 = f0({2});
  const EnvelopeRing u3 = build_envelope(q3.field()), u2 = build_envelope(q2.field());
  const auto red = reduction_map(q3, q2);
  const auto lifted = lift_morphism(u3, u2, red);
  std::size_t kernel = 0;
  std::set<Elem> image;
  for (Elem e = 0; e < u3.size(); ++e) {
    kernel += lifted[e] == u2.ring().zero();
    image.insert(lifted[e]);
  }
  EXPECT_EQ(kernel, 2u);
  EXPECT_EQ(image.size(), u2.size());
}

TEST(Envelope, ConstantMapHasKernelFourButIsNotOnto) {
  const QuotientField q3 = f0({3}), q2 = f0({2});
  const EnvelopeRing u3 = build_envelope(q3.field()), u2 = build_envelope(q2.field());
  const std::vector<Elem> to_one(q3.size(), q2.field().one());
  const auto lifted = lift_morphism(u3, u2, to_one);
  std::size_t kernel = 0;
  std::set<Elem> image;
  for (Elem e = 0; e < u3.size(); ++e) {
    kernel += lifted[e] == u2.ring().zero();
    image.insert(lifted[e]);
  }
  EXPECT_EQ(kernel, 4u);
  EXPECT_EQ(image.size(), 2u);
}

TEST(Envelope, LiftRejectsNonMorphisms) {
  const QuotientField q3 = f0({3}), q2 = f0({2});
  const EnvelopeRing u3 = build_envelope(q3.field()), u2 = build_envelope(q2.field());
  std::vector<Elem> bad(q3.size(), q2.generator(0));
  EXPECT_THROW(lift_morphism(u3, u2, bad), PreconditionError);
}

TEST(Envelope, UniversalExtensionIntoZmod) {
  const EnvelopeRing u = build_envelope(zodd(3));
  const FiniteRing z8 = zmod_ring(8);
  std::vector<Elem> phi;
  for (Elem e = 0; e < u.base().size(); ++e) phi.push_back(static_cast<Elem>(std::stoi(u.base().label(e))));
  const auto ext = universal_extension(u, z8, phi);
  for (Elem e = 0; e < u.size(); ++e) EXPECT_EQ(std::stoll(z8.label(ext[e])), num(u.ring(), e));
}

TEST(Envelope, RetractAdditionDependsOnBasepoint) {
  const FiniteThreeField f = zodd(3);
  const auto t1 = retract_addition(f, f.find("1"));
  const auto t3 = retract_addition(f, f.find("3"));
  EXPECT_NE(t1, t3);
  // a (+)_c b = a + b + c mod 8
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b)
      EXPECT_EQ(std::stoi(f.label(t3[a * f.size() + b])), (std::stoi(f.label(a)) + std::stoi(f.label(b)) + 3) % 8);
}

TEST(Quotient, ByFourGivesZodd2) {
  const EnvelopeRing u = build_envelope(zodd(3));
  const Elem four = u.ring().integer(4);
  const IdealHandle j = make_ideal(u, {four});
  EXPECT_EQ(j.members.count(), 2u);
  const QuotientResult q = quotient_by_ideal(u, j.members);
  EXPECT_EQ(q.field.size(), 2u);
  EXPECT_TRUE(find_isomorphism(q.field, zodd(2)).has_value());
}

TEST(Quotient, ByMaximalIdealIsTrivial) {
  const EnvelopeRing u = build_envelope(f0({4}).field());
  const QuotientResult q = quotient_by_ideal(u, u.even_part());
  EXPECT_EQ(q.field.size(), 1u);
}

TEST(Quotient, RejectsOddGeneratorsAndNonIdeals) {
  const EnvelopeRing u = build_envelope(zodd(3));
  EXPECT_THROW(make_ideal(u, {u.odd(0)}), PreconditionError);
  ElemSet s(u.size());
  s.insert(u.ring().integer(2));
  EXPECT_THROW(quotient_by_ideal(u, s), PreconditionError);
}

TEST(EvenlyMaximal, PowersOfTwoOnly) {
  for (long long k : {1, 2, 4, 8, 64}) EXPECT_TRUE(evenly_maximal_check(k).evenly_maximal) << k;
  const auto r = evenly_maximal_check(12);
  EXPECT_FALSE(r.evenly_maximal);
  EXPECT_EQ(r.odd_prime, 3);
  EXPECT_EQ(r.witness_ideal, "(3)");
  EXPECT_EQ(evenly_maximal_check(2 * 25).odd_prime, 5);
  EXPECT_EQ(evenly_maximal_check(7 * 11).odd_prime, 7);
}

TEST(Embedding, OnlyTheTrivialFieldEmbeds) {
  EXPECT_TRUE(embedding_criterion(build_envelope(zodd(1))).embeds);
  const EmbeddingReport r = embedding_criterion(build_envelope(zodd(2)));
  EXPECT_FALSE(r.embeds);
  ASSERT_TRUE(r.witness.has_value());
  // 3 + 3 - 9 = -3 = 1 mod 4
  EXPECT_EQ(r.witness->first, zodd(2).find("3"));
  EXPECT_TRUE(r.routes_agree);
  for (unsigned n = 2; n <= 5; ++n) {
    const EmbeddingReport e = embedding_criterion(build_envelope(f0({n}).field()));
    EXPECT_FALSE(e.embeds);
    EXPECT_FALSE(e.pair_part_is_domain);
    EXPECT_TRUE(e.routes_agree);
  }
}
