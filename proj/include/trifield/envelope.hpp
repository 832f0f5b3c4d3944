#pragma once

// Operator pairs q_{a,b} : x -> x + a + b, the envelope ring U(F) = F + Q(F),
// and the constructions that route through it: locality, retracts, lifted
// morphisms, the universal extension, quotients by ideals, the embedding
// criterion.

#include <cstdio>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/iso.hpp"
#include "trifield/ring.hpp"

namespace trifield {

/// q_{alpha,1} in standard form; alpha is an element of the base field.
struct Pair {
  Elem alpha = 0;
  friend bool operator==(Pair, Pair) = default;
};

/// The unique x with nu(a, b, x) = c.
inline Elem solve_nu(const FiniteThreeField& f, Elem a, Elem b, Elem c) {
  for (Elem x = 0; x < f.size(); ++x)
    if (f.nu(a, b, x) == c) return x;
  throw Error("nu(a,b,x) = c has no solution; carrier is not a ternary group");
}

/// q_{a,b} = q_{a+b-1,1}: alpha solves nu(1, 1, alpha) = nu(a, b, 1).
inline Pair standard_form(const FiniteThreeField& f, Elem a, Elem b) {
  return {solve_nu(f, f.one(), f.one(), f.nu(a, b, f.one()))};
}

/// The translation a pair performs on the base: q_{alpha,1}(x) = nu(x, alpha, 1).
inline Elem pair_action(const FiniteThreeField& f, Pair p, Elem x) { return f.nu(x, p.alpha, f.one()); }

/// q_alpha + q_beta = q_{alpha+beta+1}.
inline Pair pair_add(const FiniteThreeField& f, Pair p, Pair q) { return {f.nu(p.alpha, q.alpha, f.one())}; }

/// q_alpha * q_beta = q_{alpha+beta+alpha*beta}.
inline Pair pair_mul(const FiniteThreeField& f, Pair p, Pair q) {
  return {f.nu(p.alpha, q.alpha, f.mul(p.alpha, q.alpha))};
}

/// The additive neutral of Q(F): alpha = 1~ (the querelement of 1).
inline Pair pair_zero(const FiniteThreeField& f) { return {quer_add(f.carrier(), f.one())}; }

/// U(F) materialized as a binary ring. Index i < |F| is the base element i
/// (odd part); index |F| + alpha is the pair q_{alpha,1} (even part).
class EnvelopeRing {
 public:
  EnvelopeRing(FiniteThreeField base, FiniteRing ring, bool verified)
      : base_(std::move(base)), ring_(std::move(ring)), verified_(verified) {}

  const FiniteThreeField& base() const { return base_; }
  const FiniteRing& ring() const { return ring_; }
  std::size_t size() const { return ring_.size(); }
  bool axioms_verified() const { return verified_; }

  bool is_odd(Elem u) const { return u < base_.size(); }
  Elem odd(Elem base_elem) const { return base_elem; }
  Elem pair(Pair p) const { return static_cast<Elem>(base_.size() + p.alpha); }
  Pair as_pair(Elem u) const {
    if (is_odd(u)) throw PreconditionError("element " + ring_.label(u) + " is not a pair");
    return {static_cast<Elem>(u - base_.size())};
  }
  /// 0 = even/pair, 1 = odd/base.
  std::vector<int> parity() const {
    std::vector<int> p(size());
    for (Elem u = 0; u < size(); ++u) p[u] = is_odd(u) ? 1 : 0;
    return p;
  }
  ElemSet even_part() const {
    ElemSet s(size());
    for (Elem u = static_cast<Elem>(base_.size()); u < size(); ++u) s.insert(u);
    return s;
  }
  ElemSet odd_part_set() const {
    ElemSet s(size());
    for (Elem u = 0; u < base_.size(); ++u) s.insert(u);
    return s;
  }

 private:
  FiniteThreeField base_;
  FiniteRing ring_;
  bool verified_;
};

/// U(F) with the case-split operations; ring axioms are verified
/// exhaustively when |U| is within the ring cap.
inline EnvelopeRing build_envelope(const FiniteThreeField& f, const Limits& limits = default_limits()) {
  const std::size_t n = f.size();
  const Elem one = f.one();
  // inverse of x -> nu(1, 1, x), for standard forms
  std::vector<Elem> inv11(n, kOutside);
  for (Elem x = 0; x < n; ++x) inv11[f.nu(one, one, x)] = x;
  for (Elem x : inv11)
    if (x == kOutside) throw Error("nu(1,1,x) is not a bijection; carrier is not a ternary group");
  auto stdform = [&](Elem a, Elem b) { return inv11[f.nu(a, b, one)]; };
  const auto N = static_cast<Elem>(n);

  auto add = [&](Elem u, Elem v) -> Elem {
    const bool uo = u < N, vo = v < N;
    if (uo && vo) return N + stdform(u, v);
    if (!uo && vo) return f.nu(v, u - N, one);
    if (uo && !vo) return f.nu(u, v - N, one);
    return N + f.nu(u - N, v - N, one);
  };
  auto mul = [&](Elem u, Elem v) -> Elem {
    const bool uo = u < N, vo = v < N;
    if (uo && vo) return f.mul(u, v);
    if (!uo && vo) return N + stdform(f.mul(u - N, v), v);  // q_{a,1} v = q_{av, v}
    if (uo && !vo) return N + stdform(f.mul(u, v - N), u);  // u q_{a,1} = q_{ua, u}
    const Elem a = u - N, b = v - N;
    return N + f.nu(a, b, f.mul(a, b));
  };

  std::vector<std::string> labels;
  for (Elem x = 0; x < n; ++x) labels.push_back(f.label(x));
  // over (Z/2^k)^odd the pair q_{x,1} is the even residue x + 1
  unsigned k = 0;
  const bool residues = std::sscanf(f.origin().c_str(), "(Z/2^%uZ)^odd", &k) == 1 && k < 32;
  for (Elem x = 0; x < n; ++x)
    labels.push_back(residues ? std::to_string((std::stoull(f.label(x)) + 1) % (std::uint64_t{1} << k))
                              : "q[" + f.label(x) + "]");
  const Elem zero = N + quer_add(f.carrier(), one);
  FiniteRing ring = FiniteRing::build(std::move(labels), add, mul, zero, one);
  bool verified = false;
  if (ring.size() <= limits.max_ring) {
    if (auto v = check_ring_axioms(ring); !v)
      throw Error("envelope ring axiom '" + v.axiom + "' fails at " + v.detail);
    verified = true;
  }
  return EnvelopeRing(f, std::move(ring), verified);
}

struct LocalReport {
  std::vector<ElemSet> maximal_ideals;
  std::size_t residue_size = 0;        // |U| / |J| for the first maximal ideal
  bool unique_equals_even_part = false;
};

inline LocalReport verify_local(const EnvelopeRing& u, const Limits& limits = default_limits()) {
  LocalReport r;
  r.maximal_ideals = maximal_ideals(u.ring(), limits);
  if (!r.maximal_ideals.empty()) r.residue_size = u.size() / r.maximal_ideals.front().count();
  r.unique_equals_even_part = r.maximal_ideals.size() == 1 && r.maximal_ideals.front() == u.even_part();
  return r;
}

/// a (+)_c b = q_{a,b}(c) = nu(a, b, c). Not functorial: the table depends
/// on the arbitrary choice of c.
inline std::vector<Elem> retract_addition(const FiniteThreeField& f, Elem c) {
  const std::size_t n = f.size();
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) table[a * n + b] = f.nu(a, b, c);
  return table;
}

/// U(phi): phi on the odd part, q_{a,b} -> q_{phi(a),phi(b)} on pairs.
inline std::vector<Elem> lift_morphism(const EnvelopeRing& source, const EnvelopeRing& target,
                                       const std::vector<Elem>& phi) {
  if (!is_field_morphism(source.base(), target.base(), phi))
    throw PreconditionError("map is not a unital 3-field morphism");
  const auto n = static_cast<Elem>(source.base().size());
  std::vector<Elem> lifted(source.size());
  for (Elem x = 0; x < n; ++x) {
    lifted[x] = target.odd(phi[x]);
    // q_{x,1} -> q_{phi(x), phi(1)} = q_{phi(x), 1}
    lifted[n + x] = target.pair(standard_form(target.base(), phi[x], phi[source.base().one()]));
  }
  if (!is_ring_morphism(source.ring(), target.ring(), lifted))
    throw Error("lifted map is not a ring morphism");
  return lifted;
}

/// The ring morphism phibar : U(F) -> R with phibar o i_F = phi, where phi
/// maps F into R preserving a+b+c, a*b and 1.
inline std::vector<Elem> universal_extension(const EnvelopeRing& u, const FiniteRing& r, const std::vector<Elem>& phi) {
  const FiniteThreeField& f = u.base();
  const std::size_t n = f.size();
  if (phi.size() != n) throw PreconditionError("map has wrong length");
  for (Elem x : phi)
    if (x >= r.size()) throw PreconditionError("map leaves the target ring");
  if (phi[f.one()] != r.one()) throw PreconditionError("map does not send 1 to 1");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (phi[f.mul(a, b)] != r.mul(phi[a], phi[b])) throw PreconditionError("map does not preserve products");
      for (Elem c = 0; c < n; ++c)
        if (phi[f.nu(a, b, c)] != r.add(r.add(phi[a], phi[b]), phi[c]))
          throw PreconditionError("map does not preserve ternary sums");
    }
  std::vector<Elem> ext(u.size());
  for (Elem x = 0; x < n; ++x) {
    ext[x] = phi[x];
    ext[n + x] = r.add(phi[x], phi[f.one()]);  // q_{x,1} -> phi(x) + phi(1)
  }
  if (!is_ring_morphism(u.ring(), r, ext)) throw Error("extension is not a ring morphism");
  return ext;
}

/// An ideal for a 3-field: an ideal of U(F) inside the pair part Q(F).
struct IdealHandle {
  std::vector<Elem> generators;
  ElemSet members;
};

inline IdealHandle make_ideal(const EnvelopeRing& u, std::vector<Elem> generators) {
  for (Elem g : generators)
    if (g >= u.size() || u.is_odd(g)) throw PreconditionError("ideal generators must be pairs");
  IdealHandle h{std::move(generators), {}};
  h.members = ideal_closure(u.ring(), h.generators);
  return h;
}

class ProperQuotientError : public Error {
 public:
  ProperQuotientError(const std::string& what, ElemSet witness) : Error(what), witness_ideal(std::move(witness)) {}
  ElemSet witness_ideal;
};

struct QuotientResult {
  FiniteThreeField field;
  std::vector<Elem> class_of;  // base element -> quotient element
};

/// F / J under r1 ~ r2 iff q(r1) = r2 for some pair q in J. The quotient is
/// a 3-field iff every proper ideal of U containing J misses F; that
/// condition is checked over all ideals and a failing one is reported.
inline QuotientResult quotient_by_ideal(const EnvelopeRing& u, const ElemSet& ideal,
                                        const Limits& limits = default_limits()) {
  const FiniteThreeField& f = u.base();
  if (!is_ideal(u.ring(), ideal)) throw PreconditionError("J is not an ideal of U(F)");
  if (!ideal.subset_of(u.even_part())) throw PreconditionError("J is not contained in the pair part Q(F)");

  for (const ElemSet& j : enumerate_ideals(u.ring(), limits)) {
    if (j.count() == u.size() || !ideal.subset_of(j)) continue;
    if (j.intersects(u.odd_part_set()))
      throw ProperQuotientError("an ideal containing J meets F; the quotient is not a 3-field", j);
  }

  const std::size_t n = f.size();
  std::vector<Elem> rep(n, kOutside);
  for (Elem r = 0; r < n; ++r) {
    if (rep[r] != kOutside) continue;
    for (Elem q : ideal.elements()) rep[pair_action(f, u.as_pair(q), r)] = r;
  }
  std::vector<Elem> reps;
  for (Elem r = 0; r < n; ++r)
    if (rep[r] == r) reps.push_back(r);
  std::vector<Elem> position(n, kOutside);
  std::vector<std::string> labels;
  for (Elem i = 0; i < reps.size(); ++i) {
    position[reps[i]] = i;
    labels.push_back(f.label(reps[i]));
  }
  std::vector<Elem> class_of(n);
  for (Elem r = 0; r < n; ++r) class_of[r] = position[rep[r]];

  auto carrier = TernaryCarrier::build(
      std::move(labels), [&](Elem a, Elem b, Elem c) { return class_of[f.nu(reps[a], reps[b], reps[c])]; },
      [&](Elem a, Elem b) { return class_of[f.mul(reps[a], reps[b])]; });
  QuotientResult out{FiniteThreeField(std::move(carrier), class_of[f.one()], "quotient of " + f.origin()),
                     std::move(class_of)};
  if (!is_field_morphism(f, out.field, out.class_of)) throw Error("quotient map is not a morphism");
  return out;
}

struct EvenlyMaximalReport {
  bool evenly_maximal = true;
  std::optional<long long> odd_prime;  // p | k0, p odd
  std::string witness_ideal;           // an ideal of Z containing (2 k0) and meeting Z^odd
};

/// (2 k0) in Z^even satisfies the evenly-maximal condition iff k0 is a power
/// of two. An odd prime divisor p yields the proper ideal (p) of Z, which
/// contains 2 k0 and the odd element p.
inline EvenlyMaximalReport evenly_maximal_check(long long k0) {
  if (k0 < 1) throw PreconditionError("k0 must be positive");
  EvenlyMaximalReport r;
  long long m = k0;
  while (m % 2 == 0) m /= 2;
  if (m == 1) return r;
  long long p = 3;
  while (p * p <= m && m % p != 0) p += 2;
  if (m % p != 0) p = m;
  r.evenly_maximal = false;
  r.odd_prime = p;
  r.witness_ideal = "(" + std::to_string(p) + ")";
  return r;
}

struct EmbeddingReport {
  bool embeds = true;                        // from the x + y - xy = 1 scan
  std::optional<std::pair<Elem, Elem>> witness;  // (x, y), x != 1, y != 1
  bool pair_part_is_domain = true;           // from the zero-divisor scan in Q(F)
  std::optional<std::pair<Elem, Elem>> zero_divisors;  // nonzero pairs (as U indices) with product 0
  bool routes_agree = true;
};

/// Embedding into a binary field: x + y - xy = 1 only for x = 1 (for every
/// y != 1), computed in U(F); compared against Q(F) having no zero divisors.
inline EmbeddingReport embedding_criterion(const EnvelopeRing& u) {
  const FiniteThreeField& f = u.base();
  const FiniteRing& r = u.ring();
  EmbeddingReport rep;
  for (Elem y = 0; y < f.size() && !rep.witness; ++y) {
    if (y == f.one()) continue;
    for (Elem x = 0; x < f.size(); ++x) {
      if (x == f.one()) continue;
      const Elem lhs = r.sub(r.add(u.odd(x), u.odd(y)), r.mul(u.odd(x), u.odd(y)));
      if (lhs == u.odd(f.one())) {
        rep.witness = {x, y};
        break;
      }
    }
  }
  rep.embeds = !rep.witness;

  const auto even = u.even_part().elements();
  for (Elem a : even) {
    if (a == r.zero()) continue;
    for (Elem b : even) {
      if (b == r.zero()) continue;
      if (r.mul(a, b) == r.zero()) {
        rep.zero_divisors = {a, b};
        break;
      }
    }
    if (rep.zero_divisors) break;
  }
  rep.pair_part_is_domain = !rep.zero_divisors;
  rep.routes_agree = rep.embeds == rep.pair_part_is_domain;
  return rep;
}

}  // namespace trifield
