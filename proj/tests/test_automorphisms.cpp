#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "trifield/automorphisms.hpp"
#include "trifield/poly_fields.hpp"

using namespace trifield;

namespace {

CompositionTable table_of(std::size_t k, const std::function<std::size_t(std::size_t, std::size_t)>& op,
                          std::size_t identity = 0) {
  CompositionTable t;
  for (std::size_t i = 0; i < k; ++i) t.elements.push_back(static_cast<Elem>(i));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) t.table.push_back(op(a, b));
  t.identity = identity;
  return t;
}

CompositionTable permutation_group(std::size_t n) {
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return table_of(perms.size(), [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
    return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
  });
}

// +-1, +-i, +-j, +-k as (sign, unit) pairs encoded 2*unit + sign.
CompositionTable quaternion_group() {
  // unit products: sign and result for 1,i,j,k
  const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return table_of(8, [&](std::size_t a, std::size_t b) {
    const std::size_t ua = a / 2, ub = b / 2;
    return static_cast<std::size_t>(2 * unit[ua][ub] + ((a % 2) ^ (b % 2) ^ sign[ua][ub]));
  });
}

// x -> g is invertible on F0(n) iff g - 1 generates (x - 1) mod (x - 1)^2,
// i.e. the derivative of g at 1 is odd: an odd count of odd-degree terms.
std::size_t predicted_aut_order(const QuotientField& q) {
  std::size_t count = 0;
  for (Elem e = 0; e < q.size(); ++e) {
    const auto& xs = q.x_coordinates(e);
    unsigned odd_terms = 0;
    for (std::size_t i = 1; i < xs.size(); i += 2) odd_terms += xs[i] & 1;
    count += odd_terms % 2;
  }
  return q.size() == 1 ? 1 : count;
}

}  // namespace

TEST(Fingerprint, AbelianInvariants) {
  EXPECT_EQ(fingerprint_group(table_of(6, [](auto a, auto b) { return (a + b) % 6; })).name, "C6");
  // Z/2 x Z/4 encoded as 4a + b
  const auto g = fingerprint_group(table_of(8, [](auto a, auto b) { return ((a / 4 + b / 4) % 2) * 4 + (a + b) % 4; }));
  EXPECT_EQ(g.abelian_invariants, (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(g.name, "C2 x C4");
  const auto k = fingerprint_group(table_of(4, [](auto a, auto b) { return a ^ b; }));
  EXPECT_EQ(k.involutions, 3u);
  EXPECT_NE(k.name.find("Klein"), std::string::npos);
  EXPECT_EQ(fingerprint_group(table_of(1, [](auto, auto) { return std::size_t{0}; })).name, "C1");
}

TEST(Fingerprint, NonabelianGroups) {
  const auto s3 = fingerprint_group(permutation_group(3));
  EXPECT_FALSE(s3.abelian);
  EXPECT_EQ(s3.name, "D3 (dihedral of order 6); S3");
  const auto q8 = fingerprint_group(quaternion_group());
  EXPECT_EQ(q8.name, "Q8 (quaternion group)");
  EXPECT_EQ(q8.involutions, 1u);
  EXPECT_EQ(fingerprint_group(permutation_group(4)).name, "nonabelian of order 24 (unnamed)");
}

TEST(Fingerprint, RejectsNonGroups) {
  EXPECT_THROW(fingerprint_group(table_of(3, [](auto a, auto b) { return std::max(a, b); })), Error);
  EXPECT_THROW(fingerprint_group(table_of(3, [](auto a, auto b) { return (2 * a + b) % 3; })), Error);
}

TEST(Automorphisms, OrderMatchesDerivativeCriterion) {
  for (unsigned n = 1; n <= 6; ++n) {
    const QuotientField q = f0({n});
    const CompositionTable t = automorphism_group(q);
    EXPECT_EQ(t.size(), predicted_aut_order(q)) << n;
    EXPECT_TRUE(t.is_latin_square());
    EXPECT_EQ(t.elements[t.identity], q.generator(0));
  }
}

TEST(Automorphisms, CompositionIsSubstitution) {
  const QuotientField q = f0({5});
  const CompositionTable t = automorphism_group(q);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      // P_i o P_j = P_i(P_j(x)): substitute P_j into P_i
      EXPECT_EQ(t.elements[t.at(i, j)], q.substitute(t.elements[i], {t.elements[j]}));
  const auto g = fingerprint_group(t);
  EXPECT_EQ(g.order, 8u);
  EXPECT_EQ(g.name, "D4 (dihedral of order 8)");
}

TEST(Automorphisms, SmallGroups) {
  EXPECT_EQ(fingerprint_group(automorphism_group(f0({3}))).name, "C2");
  EXPECT_EQ(fingerprint_group(automorphism_group(f0({4}))).order, 4u);
  EXPECT_THROW(automorphism_group(f0({2, 2})), PreconditionError);
}

TEST(Labels, LetterOrderForF0Three) {
  const QuotientField q = f0({3});
  const auto labels = paper_labels(q);
  EXPECT_EQ(labels[q.field().one()], "1");
  EXPECT_EQ(labels[q.generator(0)], "a");
  EXPECT_EQ(labels[q.element("x^2")], "b");
  EXPECT_EQ(labels[q.element("1 + x + x^2")], "c");
  const auto order = paper_order(q);
  std::vector<std::string> in_order;
  for (Elem e : order) in_order.push_back(labels[e]);
  EXPECT_EQ(in_order, (std::vector<std::string>{"1", "a", "b", "c"}));
  EXPECT_THROW(paper_labels(f0({6})), PreconditionError);
}

TEST(Labels, CayleyRowsForF0Three) {
  // x^3 = x^2 + x + 1 mod (x + 1)^3
  const QuotientField q = f0({3});
  const auto labels = paper_labels(q);
  const CompositionTable t = cayley_table(q.field());
  const auto order = paper_order(q);
  const std::vector<std::size_t> rows(order.begin(), order.end());
  const auto cells = table_cells(t, element_labels(t, labels), rows);
  EXPECT_EQ(cells[1], (std::vector<std::string>{"a", "b", "c", "1"}));
  EXPECT_EQ(cells[2], (std::vector<std::string>{"b", "c", "1", "a"}));
}

TEST(Export, MarkdownAndCsv) {
  const std::vector<std::string> h{"1", "a,b"};
  const std::vector<std::vector<std::string>> cells{{"1", "a,b"}, {"a,b", "\"q\""}};
  EXPECT_EQ(to_markdown("*", h, cells), "| * | 1 | a,b |\n|---|---|---|\n| **1** | 1 | a,b |\n| **a,b** | a,b | \"q\" |\n");
  EXPECT_EQ(to_csv("*", h, cells), "*,1,\"a,b\"\n1,1,\"a,b\"\n\"a,b\",\"a,b\",\"\"\"q\"\"\"\n");
}
