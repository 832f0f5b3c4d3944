#pragma once

// Endomorphisms of singly generated quotient fields by generator
// substitution, automorphism groups as composition tables, Cayley tables,
// group fingerprints, and the letter labels used in the published tables.

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/iso.hpp"
#include "trifield/poly_fields.hpp"

namespace trifield {

/// x -> image, extended to f -> f(image).
struct PolyEndo {
  Elem image = 0;
  std::vector<Elem> map;
};

/// A finite magma on `elements` (field indices); table entries are indices
/// into `elements`.
struct CompositionTable {
  std::vector<Elem> elements;
  std::vector<std::size_t> table;
  std::size_t identity = 0;

  std::size_t size() const { return elements.size(); }
  std::size_t at(std::size_t i, std::size_t j) const { return table[i * size() + j]; }
  bool is_latin_square() const {
    const std::size_t k = size();
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<char> row(k, 0), col(k, 0);
      for (std::size_t j = 0; j < k; ++j) {
        if (row[at(i, j)]++ || col[at(j, i)]++) return false;
      }
    }
    return true;
  }
};

inline std::vector<PolyEndo> enumerate_endomorphisms(const QuotientField& q) {
  if (q.variables().size() != 1) throw PreconditionError("generator substitution needs a singly generated field");
  const FiniteThreeField& f = q.field();
  std::vector<PolyEndo> out;
  for (Elem e = 0; e < f.size(); ++e) {
    PolyEndo endo{e, std::vector<Elem>(f.size())};
    for (Elem g = 0; g < f.size(); ++g) endo.map[g] = q.substitute(g, {e});
    if (!is_field_morphism(f, f, endo.map)) throw Error("substitution x -> " + f.label(e) + " is not a morphism");
    out.push_back(std::move(endo));
  }
  return out;
}

/// Automorphisms: endomorphisms with a compositional inverse (P o Q = x and
/// Q o P = x), cross-checked against "the image generates the field".
/// Composition is P o Q = P(Q(x)); table[i][j] is the index of P_i o P_j.
inline CompositionTable automorphism_group(const QuotientField& q) {
  const FiniteThreeField& f = q.field();
  const auto endos = enumerate_endomorphisms(q);
  const Elem x = q.generator(0);
  std::vector<Elem> autos;
  for (const auto& p : endos) {
    bool has_inverse = false;
    for (const auto& r : endos)
      if (r.map[p.image] == x && p.map[r.image] == x) has_inverse = true;
    const bool generates = generated_subfield(f, {p.image}).count() == f.size();
    if (has_inverse != generates)
      throw Error("automorphism routes disagree at x -> " + f.label(p.image));
    if (has_inverse) autos.push_back(p.image);
  }
  CompositionTable t;
  t.elements = autos;
  std::vector<std::size_t> position(f.size(), 0);
  for (std::size_t i = 0; i < autos.size(); ++i) position[autos[i]] = i;
  t.identity = position[x];
  for (Elem pi : autos)
    for (Elem pj : autos) t.table.push_back(position[endos[pj].map[pi]]);
  return t;
}

/// The multiplication table of F in index order.
inline CompositionTable cayley_table(const FiniteThreeField& f) {
  CompositionTable t;
  for (Elem e = 0; e < f.size(); ++e) t.elements.push_back(e);
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b) t.table.push_back(f.mul(a, b));
  t.identity = f.one();
  if (!t.is_latin_square()) throw Error("multiplication table is not a Latin square");
  return t;
}

struct GroupFingerprint {
  std::size_t order = 0;
  bool abelian = true;
  std::vector<std::size_t> element_orders;   // sorted
  std::size_t involutions = 0;
  std::vector<std::size_t> abelian_invariants;  // cyclic factor orders, abelian groups only
  std::string name;
};

namespace detail {

inline std::string cyclic_product_name(const std::vector<std::size_t>& inv) {
  if (inv.empty()) return "C1";
  std::string out;
  for (std::size_t i = 0; i < inv.size(); ++i) out += (i ? " x C" : "C") + std::to_string(inv[i]);
  return out;
}

/// Invariant factors of a finite abelian group from its element orders:
/// for each prime p the counts of elements with x^{p^k} = 1 fix the
/// p-primary partition.
inline std::vector<std::size_t> abelian_invariants(const std::vector<std::size_t>& orders) {
  std::vector<std::size_t> factors;  // prime-power cyclic factors
  std::size_t m = orders.size();
  for (std::size_t p = 2; m > 1; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    // log_p #{x : x^{p^k} = 1} = sum_i min(k, e_i); successive differences
    // count the factors with e_i >= k
    auto log_count = [&](std::size_t pk) {
      std::size_t c = 0, lg = 0;
      for (std::size_t o : orders) c += pk % o == 0 ? 1 : 0;
      while (c > 1) {
        c /= p;
        ++lg;
      }
      return lg;
    };
    std::vector<std::size_t> at_least{0};  // at_least[k] = #{i : e_i >= k}, k >= 1
    std::size_t prev = 0;
    for (std::size_t pk = p;; pk *= p) {
      const std::size_t lg = log_count(pk);
      if (lg == prev) break;
      at_least.push_back(lg - prev);
      prev = lg;
    }
    std::size_t pk = 1;
    for (std::size_t k = 1; k < at_least.size(); ++k) {
      pk *= p;
      const std::size_t next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (std::size_t c = 0; c < at_least[k] - next; ++c) factors.push_back(pk);
    }
  }
  // combine prime powers into invariant factors d_1 | d_2 | ...
  std::map<std::size_t, std::vector<std::size_t>> by_prime;
  for (std::size_t q : factors) {
    std::size_t p = 2;
    while (q % p) ++p;
    by_prime[p].push_back(q);
  }
  std::size_t count = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    count = std::max(count, v.size());
  }
  std::vector<std::size_t> inv(count, 1);
  for (auto& [p, v] : by_prime)
    for (std::size_t i = 0; i < v.size(); ++i) inv[count - 1 - i] *= v[i];
  return inv;
}

}  // namespace detail

/// Order, commutativity, element orders, and a name: every abelian group,
/// the dihedral groups, Q8, A4 and Dic3; other nonabelian groups get only
/// their order.
inline GroupFingerprint fingerprint_group(const CompositionTable& t) {
  const std::size_t k = t.size();
  auto fail = [&](const std::string& what, std::initializer_list<std::size_t> w) {
    std::ostringstream os;
    os << "not a group: " << what << " at";
    for (std::size_t i : w) os << " " << i;
    throw Error(os.str());
  };
  for (std::size_t i = 0; i < k; ++i)
    if (t.at(t.identity, i) != i || t.at(i, t.identity) != i) fail("identity", {i});
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c))) fail("associativity", {a, b, c});
  for (std::size_t a = 0; a < k; ++a) {
    bool inv = false;
    for (std::size_t b = 0; b < k && !inv; ++b) inv = t.at(a, b) == t.identity && t.at(b, a) == t.identity;
    if (!inv) fail("inverse", {a});
  }

  GroupFingerprint g;
  g.order = k;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (t.at(a, b) != t.at(b, a)) g.abelian = false;
  for (std::size_t a = 0; a < k; ++a) {
    std::size_t o = 1;
    for (std::size_t p = a; p != t.identity; p = t.at(p, a)) ++o;
    g.element_orders.push_back(o);
    if (o == 2) ++g.involutions;
  }
  std::sort(g.element_orders.begin(), g.element_orders.end());
  const std::size_t max_order = g.element_orders.back();

  if (g.abelian) {
    g.abelian_invariants = detail::abelian_invariants(g.element_orders);
    g.name = detail::cyclic_product_name(g.abelian_invariants);
    if (g.abelian_invariants == std::vector<std::size_t>{2, 2}) g.name += " (Klein four group; dihedral of order 4)";
    return g;
  }
  const std::size_t half = k / 2;
  // D_m has m + 1 involutions for even m and m for odd m
  const bool dihedral_shape =
      k % 2 == 0 && half >= 3 && max_order == half && g.involutions == (half % 2 == 0 ? half + 1 : half);
  if (dihedral_shape) {
    g.name = "D" + std::to_string(half) + " (dihedral of order " + std::to_string(k) + ")";
    if (k == 6) g.name += "; S3";
  } else if (k == 8 && g.involutions == 1) {
    g.name = "Q8 (quaternion group)";
  } else if (k == 12 && max_order == 3) {
    g.name = "A4";
  } else if (k == 12 && g.involutions == 1) {
    g.name = "Dic3";
  } else {
    g.name = "nonabelian of order " + std::to_string(k) + " (unnamed)";
  }
  return g;
}

// ------------------------------------------------------------------ labels

/// Letter labels of the published F0(3), F0(4), F0(5) tables: "1", then the
/// remaining elements ordered by number of terms, then by ascending exponent
/// tuple, lettered a, b, c, ... (F0(5) skips h..o).
inline std::vector<std::string> paper_labels(const QuotientField& q) {
  if (q.variables().size() != 1 || q.spec().base_precision != 1)
    throw PreconditionError("paper labels exist for F0(n) only");
  const std::size_t n = q.ring().dimension();
  std::string letters;
  if (n == 1) letters = "";
  else if (n == 2) letters = "y";
  else if (n == 3) letters = "abc";
  else if (n == 4) letters = "abcdefg";
  else if (n == 5) letters = "abcdefgpqrstuvw";
  else throw PreconditionError("paper labels exist for n <= 5");
  std::vector<Elem> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  auto exps = [&](Elem e) {
    std::vector<unsigned> v;
    const auto& xs = q.x_coordinates(e);
    for (unsigned i = 0; i < xs.size(); ++i)
      if (xs[i]) v.push_back(i);
    return v;
  };
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    const auto ea = exps(a), eb = exps(b);
    if (ea.size() != eb.size()) return ea.size() < eb.size();
    return ea < eb;
  });
  std::vector<std::string> labels(q.size());
  labels[order[0]] = "1";
  for (std::size_t i = 1; i < order.size(); ++i) labels[order[i]] = std::string(1, letters[i - 1]);
  return labels;
}

/// The element order in which the published tables list rows.
inline std::vector<Elem> paper_order(const QuotientField& q) {
  const auto labels = paper_labels(q);
  std::vector<Elem> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    if (labels[a] == "1") return labels[b] != "1";
    if (labels[b] == "1") return false;
    return labels[a] < labels[b];
  });
  return order;
}

// ------------------------------------------------------------------ export

/// Entry labels for a table whose elements are field elements.
inline std::vector<std::string> element_labels(const CompositionTable& t, const std::vector<std::string>& field_labels) {
  std::vector<std::string> out;
  for (Elem e : t.elements) out.push_back(field_labels.at(e));
  return out;
}

/// Rows and columns permuted so that they follow `row_order` (indices into
/// t.elements).
inline std::vector<std::vector<std::string>> table_cells(const CompositionTable& t,
                                                         const std::vector<std::string>& labels,
                                                         const std::vector<std::size_t>& row_order) {
  std::vector<std::vector<std::string>> cells;
  for (std::size_t i : row_order) {
    std::vector<std::string> row;
    for (std::size_t j : row_order) row.push_back(labels[t.at(i, j)]);
    cells.push_back(std::move(row));
  }
  return cells;
}

inline std::string to_markdown(const std::string& corner, const std::vector<std::string>& headers,
                               const std::vector<std::vector<std::string>>& cells) {
  std::ostringstream os;
  os << "| " << corner << " |";
  for (const auto& h : headers) os << " " << h << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < headers.size(); ++i) os << "---|";
  os << "\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << "| **" << headers[i] << "** |";
    for (const auto& c : cells[i]) os << " " << c << " |";
    os << "\n";
  }
  return os.str();
}

inline std::string to_csv(const std::string& corner, const std::vector<std::string>& headers,
                          const std::vector<std::vector<std::string>>& cells) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  std::ostringstream os;
  os << quote(corner);
  for (const auto& h : headers) os << "," << quote(h);
  os << "\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << quote(headers[i]);
    for (const auto& c : cells[i]) os << "," << quote(c);
    os << "\n";
  }
  return os.str();
}

}  // namespace trifield
