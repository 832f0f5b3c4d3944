#pragma once

// Finite binary rings given by tables: axiom checks, two-sided ideals,
// maximal ideals, and the passage R -> R \ J for local rings with residue
// field Z/2Z.

#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/core.hpp"

namespace trifield {

class FiniteRing {
 public:
  FiniteRing() = default;

  FiniteRing(std::vector<std::string> labels, std::vector<Elem> add, std::vector<Elem> mul, Elem zero, Elem one)
      : labels_(std::move(labels)), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one) {
    const std::size_t n = labels_.size();
    if (add_.size() != n * n || mul_.size() != n * n) throw Error("ring table sizes do not match");
    if (zero_ >= n || one_ >= n) throw Error("ring constants out of range");
    neg_.assign(n, kOutside);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (add_[a * n + b] == zero_) {
          neg_[a] = b;
          break;
        }
    for (Elem a = 0; a < n; ++a)
      if (neg_[a] == kOutside) throw Error("element " + labels_[a] + " has no additive inverse");
  }

  template <class Add, class Mul>
  static FiniteRing build(std::vector<std::string> labels, Add&& add_fn, Mul&& mul_fn, Elem zero, Elem one) {
    const std::size_t n = labels.size();
    std::vector<Elem> add(n * n), mul(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        add[a * n + b] = add_fn(a, b);
        mul[a * n + b] = mul_fn(a, b);
      }
    return FiniteRing(std::move(labels), std::move(add), std::move(mul), zero, one);
  }

  std::size_t size() const { return labels_.size(); }
  Elem add(Elem a, Elem b) const { return add_[a * size() + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * size() + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  const std::string& label(Elem e) const { return labels_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Elem>& add_table() const { return add_; }
  const std::vector<Elem>& mul_table() const { return mul_; }

  /// k * 1 for an integer k (negative allowed).
  Elem integer(long long k) const {
    Elem acc = zero_;
    Elem base = k < 0 ? neg(one_) : one_;
    unsigned long long m = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
    while (m) {
      if (m & 1) acc = add(acc, base);
      base = add(base, base);
      m >>= 1;
    }
    return acc;
  }
  /// k * a by double-and-add.
  Elem scale(long long k, Elem a) const { return mul(integer(k), a); }

  bool is_commutative() const {
    for (Elem a = 0; a < size(); ++a)
      for (Elem b = a + 1; b < size(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Elem> add_, mul_, neg_;
  Elem zero_ = 0, one_ = 0;
};

/// Z/mZ with labels "0".."m-1".
inline FiniteRing zmod_ring(unsigned m) {
  if (m == 0) throw PreconditionError("modulus must be positive");
  std::vector<std::string> labels;
  for (unsigned i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  return FiniteRing::build(
      std::move(labels), [m](Elem a, Elem b) { return static_cast<Elem>((a + b) % m); },
      [m](Elem a, Elem b) { return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % m); }, 0, m == 1 ? 0 : 1);
}

/// Abelian group, associativity of the product, distributivity, unit.
inline Verdict check_ring_axioms(const FiniteRing& r) {
  const std::size_t n = r.size();
  auto text = [&](std::initializer_list<Elem> xs) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (Elem x : xs) {
      os << (first ? "" : ",") << r.label(x);
      first = false;
    }
    os << ')';
    return os.str();
  };
  for (Elem a = 0; a < n; ++a) {
    if (r.add(a, r.zero()) != a) return Verdict::fail("additive-identity", {a}, text({a}));
    if (r.mul(a, r.one()) != a || r.mul(r.one(), a) != a) return Verdict::fail("unit", {a}, text({a}));
    for (Elem b = 0; b < n; ++b)
      if (r.add(a, b) != r.add(b, a)) return Verdict::fail("additive-commutativity", {a, b}, text({a, b}));
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
          return Verdict::fail("additive-associativity", {a, b, c}, text({a, b, c}));
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          return Verdict::fail("multiplicative-associativity", {a, b, c}, text({a, b, c}));
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          return Verdict::fail("left-distributivity", {a, b, c}, text({a, b, c}));
        if (r.mul(r.add(b, c), a) != r.add(r.mul(b, a), r.mul(c, a)))
          return Verdict::fail("right-distributivity", {a, b, c}, text({a, b, c}));
      }
  return Verdict::ok();
}

/// Smallest two-sided ideal containing `generators`.
inline ElemSet ideal_closure(const FiniteRing& r, const ElemSet& generators) {
  const std::size_t n = r.size();
  ElemSet ideal(n);
  ideal.insert(r.zero());
  std::vector<Elem> members{r.zero()};
  std::vector<Elem> work = generators.elements();
  auto push = [&](Elem e) {
    if (ideal.insert(e)) {
      members.push_back(e);
      work.push_back(e);
    }
  };
  std::vector<Elem> seed = std::move(work);
  work.clear();
  for (Elem g : seed) push(g);
  while (!work.empty()) {
    const Elem e = work.back();
    work.pop_back();
    for (Elem x = 0; x < n; ++x) {
      push(r.mul(x, e));
      push(r.mul(e, x));
    }
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) push(r.add(members[i], e));
  }
  return ideal;
}

inline ElemSet ideal_closure(const FiniteRing& r, const std::vector<Elem>& generators) {
  ElemSet g(r.size());
  for (Elem e : generators) g.insert(e);
  return ideal_closure(r, g);
}

inline bool is_ideal(const FiniteRing& r, const ElemSet& s) {
  if (!s.contains(r.zero())) return false;
  const auto members = s.elements();
  for (Elem a : members) {
    for (Elem b : members)
      if (!s.contains(r.add(a, b))) return false;
    if (!s.contains(r.neg(a))) return false;
    for (Elem x = 0; x < r.size(); ++x)
      if (!s.contains(r.mul(x, a)) || !s.contains(r.mul(a, x))) return false;
  }
  return true;
}

/// All two-sided ideals, as sums of principal ideals. Sorted.
inline std::vector<ElemSet> enumerate_ideals(const FiniteRing& r, const Limits& limits = default_limits()) {
  if (r.size() > limits.max_ring) {
    std::ostringstream os;
    os << "ideal enumeration: ring has " << r.size() << " elements, cap is " << limits.max_ring;
    throw LimitError(os.str());
  }
  std::set<ElemSet> found;
  std::vector<ElemSet> principal;
  for (Elem a = 0; a < r.size(); ++a) {
    ElemSet p = ideal_closure(r, std::vector<Elem>{a});
    if (found.insert(p).second) principal.push_back(p);
  }
  std::vector<ElemSet> frontier(found.begin(), found.end());
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (const ElemSet& i : frontier)
      for (const ElemSet& p : principal) {
        if (p.subset_of(i)) continue;
        ElemSet u = i;
        u |= p;
        ElemSet sum = ideal_closure(r, u);
        if (found.insert(sum).second) next.push_back(std::move(sum));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// Proper ideals that are maximal under inclusion.
inline std::vector<ElemSet> maximal_ideals(const FiniteRing& r, const Limits& limits = default_limits()) {
  const auto ideals = enumerate_ideals(r, limits);
  std::vector<ElemSet> proper;
  for (const auto& i : ideals)
    if (i.count() < r.size()) proper.push_back(i);
  std::vector<ElemSet> out;
  for (const auto& i : proper) {
    bool maximal = true;
    for (const auto& j : proper)
      if (!(i == j) && i.subset_of(j)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(i);
  }
  return out;
}

/// The 3-field on the subset `odd` of a ring with inherited a+b+c and a*b.
/// Throws if the subset is not closed or the result violates field axioms.
inline FiniteThreeField odd_part(const FiniteRing& r, const ElemSet& odd, std::string origin) {
  const std::vector<Elem> members = odd.elements();
  std::vector<Elem> position(r.size(), kOutside);
  std::vector<std::string> labels;
  for (Elem i = 0; i < members.size(); ++i) {
    position[members[i]] = i;
    labels.push_back(r.label(members[i]));
  }
  if (position[r.one()] == kOutside) throw PreconditionError("subset does not contain the ring unit");
  auto carrier = TernaryCarrier::build(
      std::move(labels),
      [&](Elem a, Elem b, Elem c) { return position[r.add(r.add(members[a], members[b]), members[c])]; },
      [&](Elem a, Elem b) { return position[r.mul(members[a], members[b])]; });
  return FiniteThreeField(std::move(carrier), position[r.one()], std::move(origin));
}

/// R \ J for a commutative local ring whose maximal ideal J has index 2.
inline FiniteThreeField units_as_3field(const FiniteRing& r, const Limits& limits = default_limits()) {
  if (!r.is_commutative()) throw PreconditionError("not local with residue Z/2Z: ring is not commutative");
  const auto maxi = maximal_ideals(r, limits);
  if (maxi.size() != 1) {
    std::ostringstream os;
    os << "not local with residue Z/2Z: " << maxi.size() << " maximal ideals";
    throw PreconditionError(os.str());
  }
  if (2 * maxi.front().count() != r.size()) {
    std::ostringstream os;
    os << "not local with residue Z/2Z: residue field has " << r.size() / maxi.front().count() << " elements";
    throw PreconditionError(os.str());
  }
  ElemSet complement(r.size());
  for (Elem e = 0; e < r.size(); ++e)
    if (!maxi.front().contains(e)) complement.insert(e);
  return odd_part(r, complement, "units of a local ring");
}

/// (Z/2^n Z)^odd, built directly from residue arithmetic.
inline FiniteThreeField zodd(unsigned n, const Limits& limits = default_limits()) {
  if (n == 0 || n > 31 || (std::size_t{1} << (n - 1)) > limits.max_materialize)
    throw PreconditionError("zodd: 2^(n-1) must be positive and within the materialization cap");
  const std::uint64_t m = std::uint64_t{1} << n;
  std::vector<std::uint64_t> values;
  for (std::uint64_t v = 1; v < m; v += 2) values.push_back(v);
  auto carrier = carrier_from_values(
      values, [m](auto a, auto b, auto c) { return (a + b + c) % m; }, [m](auto a, auto b) { return (a * b) % m; },
      [](auto v) { return std::to_string(v); });
  return FiniteThreeField(std::move(carrier), 0, "(Z/2^" + std::to_string(n) + "Z)^odd");
}

}  // namespace trifield
