#include <gtest/gtest.h>

#include <array>

#include "trifield/iso.hpp"
#include "trifield/structures.hpp"

using namespace trifield;

namespace {

// Envelope labels of (Z/2^m)^odd are residues mod 2^m.
long long res(const EnvelopeRing& u, Elem e) { return std::stoll(u.ring().label(e)); }

}  // namespace

TEST(VectorSpaces, SizesOfFreeAndPowerSpaces) {
  for (unsigned m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      const FiniteThreeField f = zodd(m);
      const std::size_t fs = f.size();
      std::size_t pow = 1;
      for (std::size_t i = 0; i < n; ++i) pow *= fs;
      const ThreeVectorSpace free = free_space(f, n);
      EXPECT_EQ(free.size(), (std::size_t{1} << (n - 1)) * pow) << m << "," << n;
      EXPECT_EQ(power_space(f, n).size(), pow);
      EXPECT_TRUE(free.verify().pass);
    }
  EXPECT_THROW(free_space(zodd(2), 0), PreconditionError);
}

TEST(VectorSpaces, ActionIsCoordinatewiseResidueProduct) {
  const FiniteThreeField f = zodd(3);
  const ThreeVectorSpace v = power_space(f, 2);
  const EnvelopeRing& u = v.scalars();
  const std::size_t b = u.size();
  for (Elem lam = 0; lam < b; ++lam)
    for (Elem w : v.carrier().elements()) {
      const auto d = detail::decode(w, 2, b), r = detail::decode(v.act(lam, w), 2, b);
      for (int k = 0; k < 2; ++k) EXPECT_EQ(res(u, r[k]), res(u, lam) * res(u, d[k]) % 8);
    }
  EXPECT_TRUE(v.verify().pass);
}

TEST(VectorSpaces, OverPrimeField) {
  const QuotientField q = f0({3});
  const ThreeVectorSpace v = space_over_prime_field(q.field());
  EXPECT_EQ(v.size(), q.size());
  EXPECT_TRUE(v.verify().pass);
  const std::vector<Elem> gens{q.field().one(), q.generator(0), q.element("x^2")};
  const FreeResolution r = free_resolution(v, gens);
  EXPECT_TRUE(r.formula_holds);
  EXPECT_EQ(r.kernel_size, 1u);
}

TEST(Resolution, BasisOfFreeSpaceHasTrivialKernel) {
  const FiniteThreeField f = zodd(2);
  const ThreeVectorSpace v = free_space(f, 2);
  const EnvelopeRing& u = v.scalars();
  const Elem one = u.ring().one(), zero = u.ring().zero();
  const std::vector<Elem> basis{static_cast<Elem>(detail::encode({one, zero}, u.size())),
                                static_cast<Elem>(detail::encode({zero, one}, u.size()))};
  const FreeResolution r = free_resolution(v, basis);
  EXPECT_EQ(r.free_size, 8u);
  EXPECT_EQ(r.kernel_size, 1u);
  EXPECT_TRUE(r.formula_holds);
}

// |ker| = 2^{n-1} |F|^n / |V| counted by brute force over all coefficient tuples.
TEST(Resolution, KernelMatchesBruteForceCount) {
  const FiniteThreeField f = zodd(2);
  const ThreeVectorSpace v = power_space(f, 2);
  const EnvelopeRing& u = v.scalars();
  auto vec = [&](const char* a, const char* b) {
    return static_cast<Elem>(detail::encode({u.odd(f.find(a)), u.odd(f.find(b))}, u.size()));
  };
  const std::vector<Elem> gens{vec("1", "1"), vec("3", "1")};
  const FreeResolution r = free_resolution(v, gens);
  std::size_t hits = 0;
  for (long long l1 = 0; l1 < 4; ++l1)
    for (long long l2 = 0; l2 < 4; ++l2) {
      if ((l1 + l2) % 2 == 0) continue;
      // l1 (1,1) + l2 (3,1) = (1,1) mod 4
      hits += (l1 + 3 * l2) % 4 == 1 && (l1 + l2) % 4 == 1;
    }
  EXPECT_EQ(r.kernel_size, hits);
  EXPECT_EQ(r.kernel_size, 2u);
  EXPECT_EQ(r.free_size / r.kernel_size, v.size());
  EXPECT_TRUE(r.formula_holds);
}

TEST(Resolution, RejectsNonGenerators) {
  const QuotientField q = f0({2, 2});
  const ThreeVectorSpace v = space_over_prime_field(q.field());
  try {
    free_resolution(v, {q.field().one(), q.generator(0), q.generator(1)});
    FAIL() << "expected a generation failure";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("do not generate"), std::string::npos);
  }
}

TEST(Matrices, ToeplitzCountsAndProducts) {
  for (unsigned m = 1; m <= 2; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      const FiniteThreeField f = zodd(m);
      const MatrixField t = toeplitz_field(n, f);
      std::size_t expect = std::size_t{1} << (m - 1);
      for (std::size_t i = 1; i < n; ++i) expect <<= m;
      EXPECT_EQ(t.field().size(), expect) << m << "," << n;
    }
  const MatrixField t = toeplitz_field(3, zodd(2));
  EXPECT_EQ(t.field().size(), 32u);
  const EnvelopeRing& u = t.scalars();
  for (Elem a = 0; a < t.field().size(); a += 3)
    for (Elem b = 0; b < t.field().size(); ++b) {
      const auto& A = t.matrix(a);
      const auto& B = t.matrix(b);
      const auto& C = t.matrix(t.field().mul(a, b));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          long long s = 0;
          for (int k = 0; k < 3; ++k) s += res(u, A[i * 3 + k]) * res(u, B[k * 3 + j]);
          EXPECT_EQ(res(u, C[i * 3 + j]), s % 4);
        }
    }
}

TEST(Matrices, ToeplitzIsPolynomialField) {
  const MatrixField t1 = toeplitz_field(3, zodd(1));
  EXPECT_TRUE(toeplitz_to_polynomial_field(t1, f0({3})).has_value());
  const MatrixField t2 = toeplitz_field(2, zodd(2));
  EXPECT_TRUE(toeplitz_to_polynomial_field(t2, build_quotient_field({2, {2}, {}})).has_value());
  EXPECT_FALSE(toeplitz_to_polynomial_field(t1, f0({2})).has_value());
}

TEST(Matrices, TriangularIsNoncommutative) {
  const MatrixField d = triangular_field(2, zodd(2));
  EXPECT_EQ(d.field().size(), 16u);
  EXPECT_TRUE(check_field_axioms(d.field()).pass);
  const auto w = noncommuting_pair(d.field());
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(d.field().mul(w->first, w->second), d.field().mul(w->second, w->first));
  for (Elem e = 0; e < d.field().size(); ++e)
    EXPECT_EQ(d.find(d.multiply(d.matrix(e), d.inverse_matrix(d.matrix(e)))), d.field().one());
  // over {1} the diagonal entries are 1 and 2x2 unitriangular matrices commute
  EXPECT_FALSE(noncommuting_pair(triangular_field(2, zodd(1)).field()).has_value());
}

TEST(Quaternions, HamiltonProductAgainstIntegerArithmetic) {
  const QuaternionField h = quaternion_field(zodd(2));
  const EnvelopeRing& u = h.scalars();
  ASSERT_EQ(h.field().size(), 128u);
  auto to_int = [&](const QuaternionField::Quat& q) {
    std::array<long long, 4> r{};
    for (int k = 0; k < 4; ++k) r[k] = res(u, q[k]);
    return r;
  };
  for (Elem a = 0; a < h.field().size(); a += 7)
    for (Elem b = 0; b < h.field().size(); b += 3) {
      const auto x = to_int(h.quat(a)), y = to_int(h.quat(b));
      const std::array<long long, 4> p{x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
                                       x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
                                       x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
                                       x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
      const auto got = to_int(h.quat(h.field().mul(a, b)));
      for (int k = 0; k < 4; ++k) EXPECT_EQ(got[k], ((p[k] % 4) + 4) % 4);
    }
}

TEST(Quaternions, ReportOverZ4AndTrivialField) {
  const QuaternionReport r = verify_quaternions(quaternion_field(zodd(2)));
  EXPECT_EQ(r.size, 128u);
  EXPECT_TRUE(r.all_invertible);
  EXPECT_TRUE(r.gamma_identity);
  EXPECT_TRUE(r.conjugation_anti);
  EXPECT_TRUE(r.noncommutative);
  EXPECT_NE(r.i1i2, r.i2i1);
  const QuaternionReport t = verify_quaternions(quaternion_field(zodd(1)));
  EXPECT_EQ(t.size, 8u);
  EXPECT_FALSE(t.noncommutative);
  Limits small;
  small.max_materialize = 64;
  EXPECT_THROW(quaternion_field(zodd(2), small), LimitError);
}

TEST(GroupAlgebras, CyclicOverTrivialField) {
  const FiniteThreeField one = zodd(1);
  const GroupAlgebraReport g3 = group_algebra(cyclic_group(3), one);
  EXPECT_FALSE(g3.is_3field);
  ASSERT_TRUE(g3.witness.has_value());
  // e + g + g^2 squares to itself, so it is a non-unit idempotent
  EXPECT_EQ(*g3.witness, "e+g+g^2");
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    const GroupAlgebraReport g = group_algebra(cyclic_group(n), one);
    EXPECT_TRUE(g.is_3field) << n;
    EXPECT_EQ(g.size, (std::uint64_t{1} << n) / 2);
    ASSERT_TRUE(g.field.has_value());
    EXPECT_TRUE(cyclic_group_algebra_to_polynomial_field(g, one, f0({static_cast<unsigned>(n)})).has_value()) << n;
  }
  const GroupAlgebraReport g4 = group_algebra(cyclic_group(4), one);
  EXPECT_FALSE(find_isomorphism(*g4.field, f0({3}).field()).has_value());
  EXPECT_TRUE(find_isomorphism(*g4.field, f0({4}).field()).has_value());
}

TEST(GroupAlgebras, Z4OfC2IsAFieldButNotTheTruncatedPolynomials) {
  const FiniteThreeField z4 = zodd(2);
  const GroupAlgebraReport g = group_algebra(cyclic_group(2), z4);
  EXPECT_TRUE(g.is_3field);
  ASSERT_TRUE(g.field.has_value());
  EXPECT_EQ(g.field->size(), 8u);
  // g^2 = e while (x-1)^2 = 0 forces x^2 = 2x - 1 != 1 mod 4
  const QuotientField f2 = build_quotient_field({2, {2}, {}});
  EXPECT_FALSE(cyclic_group_algebra_to_polynomial_field(g, z4, f2).has_value());
  EXPECT_FALSE(find_isomorphism(*g.field, f2.field()).has_value());
}

TEST(GroupAlgebras, SampledWhenLarge) {
  const GroupAlgebraReport g = group_algebra(cyclic_group(9), zodd(2), default_limits(), 256, 3);
  EXPECT_TRUE(g.sampled);
  EXPECT_FALSE(g.is_3field);
}
