#include <gtest/gtest.h>

#include <random>

#include "trifield/poly_fields.hpp"
#include "trifield/polynomial.hpp"

using namespace trifield;

namespace {

// Schoolbook carry-less product over Z/2 on coefficient vectors.
std::uint64_t naive_gf2_mul(std::uint64_t a, std::uint64_t b) {
  std::vector<int> c(128, 0);
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j)
      if (((a >> i) & 1) && ((b >> j) & 1)) c[i + j] ^= 1;
  std::uint64_t r = 0;
  for (int i = 0; i < 64; ++i)
    if (c[i]) r |= std::uint64_t{1} << i;
  return r;
}

IntPoly ints(std::vector<long long> c) {
  std::vector<BigInt> v;
  for (long long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

IntPoly product(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> c(a.coeffs().size() + b.coeffs().size(), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return IntPoly(std::move(c));
}

}  // namespace

TEST(Gf2, ProductMatchesSchoolbook) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t a = rng() & 0xffffffffu, b = rng() & 0x7fffffffu;
    EXPECT_EQ((Gf2Poly{a} * Gf2Poly{b}).bits, naive_gf2_mul(a, b));
  }
  EXPECT_THROW(Gf2Poly{std::uint64_t{1} << 40} * Gf2Poly{std::uint64_t{1} << 30}, LimitError);
}

TEST(Gf2, DivmodReconstructs) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const Gf2Poly p{rng() & 0xffffffu}, d{(rng() & 0xfffu) | 1};
    const auto [q, r] = p.divmod(d);
    EXPECT_EQ(q * d + r, p);
    EXPECT_LT(r.degree(), d.degree());
  }
  EXPECT_THROW(Gf2Poly{3}.divmod(Gf2Poly{}), PreconditionError);
}

TEST(Gf2, ParseReducesIntegerCoefficients) {
  EXPECT_EQ(parse_gf2_poly("x^6-1").bits, 0b1000001u);
  EXPECT_EQ(parse_gf2_poly("3x^2 + 2x + 1").bits, 0b101u);
  EXPECT_EQ(parse_gf2_poly("(x+1)^3").bits, 0b1111u);
  EXPECT_EQ(Gf2Poly{0b111}.str(), "x^2+x+1");
  EXPECT_THROW(parse_gf2_poly("x/2"), PreconditionError);
}

TEST(Parse, MultivariateOrderingAndArithmetic) {
  const MPoly p = parse_polynomial("x2*x1^2 - 3*x10 + (x1+1)^2");
  ASSERT_EQ(p.vars(), (std::vector<std::string>{"x1", "x2", "x10"}));
  EXPECT_EQ(p.total_degree(), 3u);
  EXPECT_EQ(p.coefficient_sum(), BigRational(1 - 3 + 4));
  EXPECT_TRUE(p.integral());
  EXPECT_FALSE(parse_polynomial("2/3 x + 1").integral());
  EXPECT_THROW(parse_polynomial("x +"), PreconditionError);
  EXPECT_THROW(parse_polynomial("y", {"x"}), PreconditionError);
  EXPECT_THROW(parse_polynomial("x y").univariate(), PreconditionError);
}

TEST(Parse, IntPolyEvaluation) {
  const IntPoly p = parse_int_poly("(x-1)^3");
  for (long long x = -4; x <= 4; ++x) EXPECT_EQ(p(BigInt(x)), BigInt((x - 1) * (x - 1) * (x - 1)));
  EXPECT_THROW(parse_int_poly("x/3"), PreconditionError);
}

TEST(Division, ExactDivideIsInverseOfProduct) {
  const IntPoly a = ints({1, 1, 1}), b = ints({-2, 0, 3, 1});
  const auto q = exact_divide(product(a, b), a);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, b);
  EXPECT_FALSE(exact_divide(ints({1, 0, 1}), ints({1, 1})).has_value());
  EXPECT_FALSE(exact_divide(ints({1, 2}), ints({0, 2})).has_value());
}

TEST(Division, KroneckerFindsAllDivisorsOfXFourMinusOne) {
  // x^4 - 1 = (x-1)(x+1)(x^2+1); monic divisors of degree 1..2
  const auto ds = kronecker_divisors(ints({-1, 0, 0, 0, 1}), 2, 8);
  std::set<std::vector<BigInt>> got;
  for (const auto& d : ds) got.insert(d.coeffs());
  const std::set<std::vector<BigInt>> want{ints({-1, 1}).coeffs(), ints({1, 1}).coeffs(), ints({1, 0, 1}).coeffs(),
                                           ints({-1, 0, 1}).coeffs()};
  EXPECT_EQ(got, want);
  EXPECT_THROW(kronecker_divisors(ints({1, 0, 0, 0, 0, 0, 0, 0, 0, 1}), 2, 8), LimitError);
}

TEST(Valuation, RationalVal2AndNorm) {
  EXPECT_EQ(val2(BigRational(12, 5)), 2);
  EXPECT_EQ(val2(BigRational(3, 8)), -3);
  EXPECT_EQ(format_abs2_signed(-3), "2^3");
  EXPECT_EQ(norm2(parse_polynomial("4x^2 + 6x + 8")), 1);
  EXPECT_EQ(norm2(parse_polynomial("1/4 x + 2")), -2);
  EXPECT_THROW(norm2(MPoly()), PreconditionError);
}

TEST(Parity, CoefficientSumDecides) {
  EXPECT_EQ(parity(parse_polynomial("x^2 + x + 1")), Parity::Odd);
  EXPECT_EQ(parity(parse_polynomial("x^6 - 1")), Parity::Even);
  EXPECT_EQ(parity(parse_polynomial("x1*x2 + 1/3")), Parity::Even);
  EXPECT_THROW(parity(parse_polynomial("1/2 x")), PreconditionError);
}

// Independent oracle: P over Z/2 is completely even iff P = (x+1)^deg.
TEST(CompletelyEven, Z2AgreesWithPowerOfXPlusOne) {
  for (std::uint64_t bits = 2; bits < 512; ++bits) {
    const Gf2Poly p{bits};
    if (p.at_one()) continue;
    Gf2Poly power{1};
    for (int i = 0; i < p.degree(); ++i) power = power * Gf2Poly::x_plus_1();
    const auto r = completely_even(p);
    EXPECT_EQ(r.completely_even, power == p) << p.str();
    if (!r.completely_even) {
      ASSERT_TRUE(r.witness.has_value());
      const Gf2Poly w = parse_gf2_poly(*r.witness);
      EXPECT_TRUE(w.at_one());
      EXPECT_GE(w.degree(), 1);
      EXPECT_TRUE(p.divmod(w).second.is_zero());
    }
  }
}

TEST(CompletelyEven, Z2Examples) {
  const auto r = completely_even("x^6-1", CoeffDomain::Z2);
  EXPECT_FALSE(r.completely_even);
  EXPECT_EQ(r.witness, "x^2+x+1");
  EXPECT_EQ(r.x_minus_1_multiplicity, 2);
  EXPECT_TRUE(completely_even("(x-1)^5", CoeffDomain::Z2).completely_even);
  EXPECT_THROW(completely_even("x^2+x+1", CoeffDomain::Z2), PreconditionError);
}

TEST(CompletelyEven, IntegerWitnessDividesAndIsOdd) {
  for (const char* text : {"x^3 - 1", "x^2 + x - 2", "x^4 + x^3 - x - 1", "2x^3 - 2"}) {
    const auto r = completely_even(text, CoeffDomain::Integer);
    ASSERT_FALSE(r.completely_even) << text;
    const IntPoly w = parse_int_poly(*r.witness);
    EXPECT_NE(w(BigInt(1)) % 2, 0) << text;
    EXPECT_TRUE(exact_divide(primitive_part(parse_int_poly(text)), w).has_value()) << text;
  }
  // every factor of x^2 - 1 and x^4 - 1 is even at 1
  EXPECT_TRUE(completely_even("x^2 - 1", CoeffDomain::Integer).completely_even);
  EXPECT_TRUE(completely_even("x - 3", CoeffDomain::Integer).completely_even);
  EXPECT_TRUE(completely_even("x^4 - 1", CoeffDomain::Integer).completely_even);
  EXPECT_THROW(completely_even("x^9 - 1", CoeffDomain::Integer, 8), LimitError);
}

TEST(CompletelyEven, OddRationalMatchesClearedDenominators) {
  EXPECT_EQ(completely_even("1/3 x^2 - 1/3", CoeffDomain::OddRational).completely_even,
            completely_even("x^2 - 1", CoeffDomain::Integer).completely_even);
  EXPECT_FALSE(completely_even("1/5 x^3 - 1/5", CoeffDomain::OddRational).completely_even);
  EXPECT_THROW(completely_even("1/2 x + 1/2", CoeffDomain::OddRational), PreconditionError);
}

TEST(Taylor, CoefficientsAtOne) {
  // (x-1)^2 + 1 has Taylor coefficients 1, 0, 1 at x = 1
  EXPECT_EQ(taylor_epimorphism("x^2 - 2x + 2", 3), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(taylor_epimorphism(parse_gf2_poly("x^2 - 2x + 2"), 3), (std::vector<int>{1, 0, 1}));
}
