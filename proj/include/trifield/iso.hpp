#pragma once

// Subalgebra generation and isomorphism search by generator matching, for
// 3-fields (nu, mu, 1) and binary rings (+, *, 0, 1).

#include <optional>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/ring.hpp"

namespace trifield {

namespace detail {

/// Operations of a finite algebra seen uniformly: some binary and some
/// ternary tables plus constants.
struct Signature {
  std::size_t size = 0;
  std::vector<const std::vector<Elem>*> binary;
  std::vector<const std::vector<Elem>*> ternary;
  std::vector<Elem> constants;
};

inline Signature signature_of(const FiniteThreeField& f) {
  return {f.size(), {&f.carrier().mu_table()}, {&f.carrier().nu_table()}, {f.one()}};
}

inline Signature signature_of(const FiniteRing& r) {
  return {r.size(), {&r.add_table(), &r.mul_table()}, {}, {r.zero(), r.one()}};
}

/// Closure of `seed` (plus constants) under all operations.
inline ElemSet closure(const Signature& s, std::vector<Elem> seed) {
  ElemSet in(s.size);
  std::vector<Elem> members;
  for (Elem c : s.constants) seed.push_back(c);
  for (Elem e : seed)
    if (in.insert(e)) members.push_back(e);
  const std::size_t n = s.size;
  std::size_t done = 0;  // members[0, done) have been combined with each other
  while (done < members.size()) {
    const std::size_t end = members.size();
    for (std::size_t i = done; i < end; ++i) {
      const Elem e = members[i];
      // combine the new element with everything present so far
      for (std::size_t j = 0; j <= i; ++j) {
        const Elem f = members[j];
        for (const auto* t : s.binary) {
          for (Elem r : {(*t)[e * n + f], (*t)[f * n + e]})
            if (in.insert(r)) members.push_back(r);
        }
        for (const auto* t : s.ternary)
          for (std::size_t k = 0; k <= i; ++k) {
            const Elem g = members[k];
            for (Elem r : {(*t)[(e * n + f) * n + g], (*t)[(f * n + e) * n + g], (*t)[(f * n + g) * n + e]})
              if (in.insert(r)) members.push_back(r);
          }
      }
    }
    done = end;
  }
  return in;
}

/// Tries to extend gens -> images to a homomorphism; returns the map on the
/// substructure generated by gens, or nullopt on conflict.
inline std::optional<std::vector<Elem>> extend(const Signature& a, const Signature& b, const std::vector<Elem>& gens,
                                               const std::vector<Elem>& images) {
  std::vector<Elem> map(a.size, kOutside);
  std::vector<Elem> used(b.size, kOutside);
  std::vector<Elem> members;
  auto assign = [&](Elem x, Elem y) {
    if (map[x] != kOutside) return map[x] == y;
    if (used[y] != kOutside) return false;
    map[x] = y;
    used[y] = x;
    members.push_back(x);
    return true;
  };
  for (std::size_t i = 0; i < a.constants.size(); ++i)
    if (!assign(a.constants[i], b.constants[i])) return std::nullopt;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!assign(gens[i], images[i])) return std::nullopt;

  const std::size_t na = a.size, nb = b.size;
  std::size_t done = 0;
  while (done < members.size()) {
    const std::size_t end = members.size();
    for (std::size_t i = done; i < end; ++i) {
      const Elem e = members[i];
      for (std::size_t j = 0; j <= i; ++j) {
        const Elem f = members[j];
        for (std::size_t t = 0; t < a.binary.size(); ++t) {
          const auto& ta = *a.binary[t];
          const auto& tb = *b.binary[t];
          if (!assign(ta[e * na + f], tb[map[e] * nb + map[f]])) return std::nullopt;
          if (!assign(ta[f * na + e], tb[map[f] * nb + map[e]])) return std::nullopt;
        }
        for (std::size_t t = 0; t < a.ternary.size(); ++t) {
          const auto& ta = *a.ternary[t];
          const auto& tb = *b.ternary[t];
          for (std::size_t k = 0; k <= i; ++k) {
            const Elem g = members[k];
            const Elem me = map[e], mf = map[f], mg = map[g];
            if (!assign(ta[(e * na + f) * na + g], tb[(me * nb + mf) * nb + mg])) return std::nullopt;
            if (!assign(ta[(f * na + e) * na + g], tb[(mf * nb + me) * nb + mg])) return std::nullopt;
            if (!assign(ta[(f * na + g) * na + e], tb[(mf * nb + mg) * nb + me])) return std::nullopt;
          }
        }
      }
    }
    done = end;
  }
  return map;
}

inline bool preserves(const Signature& a, const Signature& b, const std::vector<Elem>& map) {
  const std::size_t na = a.size, nb = b.size;
  for (std::size_t t = 0; t < a.binary.size(); ++t)
    for (Elem x = 0; x < na; ++x)
      for (Elem y = 0; y < na; ++y)
        if (map[(*a.binary[t])[x * na + y]] != (*b.binary[t])[map[x] * nb + map[y]]) return false;
  for (std::size_t t = 0; t < a.ternary.size(); ++t)
    for (Elem x = 0; x < na; ++x)
      for (Elem y = 0; y < na; ++y)
        for (Elem z = 0; z < na; ++z)
          if (map[(*a.ternary[t])[(x * na + y) * na + z]] != (*b.ternary[t])[(map[x] * nb + map[y]) * nb + map[z]])
            return false;
  for (std::size_t i = 0; i < a.constants.size(); ++i)
    if (map[a.constants[i]] != b.constants[i]) return false;
  return true;
}

/// Greedy generating set: repeatedly add the least element not yet generated.
inline std::vector<Elem> generators(const Signature& s) {
  std::vector<Elem> gens;
  ElemSet cur = closure(s, gens);
  while (cur.count() < s.size) {
    Elem next = 0;
    while (cur.contains(next)) ++next;
    gens.push_back(next);
    cur = closure(s, gens);
  }
  return gens;
}

/// Size of the substructure generated by one element; an isomorphism
/// invariant used to prune candidate images.
inline std::vector<std::size_t> cyclic_sizes(const Signature& s) {
  std::vector<std::size_t> out(s.size);
  for (Elem e = 0; e < s.size; ++e) out[e] = closure(s, {e}).count();
  return out;
}

inline std::optional<std::vector<Elem>> find_isomorphism(const Signature& a, const Signature& b) {
  if (a.size != b.size) return std::nullopt;
  const auto gens = generators(a);
  const auto inv_a = cyclic_sizes(a);
  const auto inv_b = cyclic_sizes(b);
  std::vector<Elem> images(gens.size());
  std::optional<std::vector<Elem>> result;
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == gens.size()) {
      auto map = extend(a, b, gens, images);
      if (!map) return false;
      for (Elem x : *map)
        if (x == kOutside) return false;
      if (!preserves(a, b, *map)) return false;
      result = std::move(map);
      return true;
    }
    for (Elem y = 0; y < b.size; ++y) {
      if (inv_b[y] != inv_a[gens[depth]]) continue;
      images[depth] = y;
      // prune: partial assignment must already extend consistently
      std::vector<Elem> g(gens.begin(), gens.begin() + static_cast<long>(depth) + 1);
      std::vector<Elem> im(images.begin(), images.begin() + static_cast<long>(depth) + 1);
      if (!extend(a, b, g, im)) continue;
      if (self(self, depth + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return result;
}

}  // namespace detail

/// Subfield generated by `seed` and 1 under nu and mu.
inline ElemSet generated_subfield(const FiniteThreeField& f, const std::vector<Elem>& seed) {
  return detail::closure(detail::signature_of(f), seed);
}

/// Subring generated by `seed`, 0 and 1.
inline ElemSet generated_subring(const FiniteRing& r, const std::vector<Elem>& seed) {
  return detail::closure(detail::signature_of(r), seed);
}

/// The subset `s` as a 3-field in its own right (elements in index order),
/// together with the inclusion map.
inline std::pair<FiniteThreeField, std::vector<Elem>> induced_subfield(const FiniteThreeField& f, const ElemSet& s,
                                                                       std::string origin) {
  const auto members = s.elements();
  std::vector<Elem> position(f.size(), kOutside);
  std::vector<std::string> labels;
  for (Elem i = 0; i < members.size(); ++i) {
    position[members[i]] = i;
    labels.push_back(f.label(members[i]));
  }
  auto carrier = TernaryCarrier::build(
      std::move(labels), [&](Elem a, Elem b, Elem c) { return position[f.nu(members[a], members[b], members[c])]; },
      [&](Elem a, Elem b) { return position[f.mul(members[a], members[b])]; });
  if (position[f.one()] == kOutside) throw PreconditionError("subset does not contain 1");
  return {FiniteThreeField(std::move(carrier), position[f.one()], std::move(origin)), members};
}

/// An isomorphism A -> B as an element map, or nullopt if none exists.
inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteThreeField& a, const FiniteThreeField& b) {
  return detail::find_isomorphism(detail::signature_of(a), detail::signature_of(b));
}

inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteRing& a, const FiniteRing& b) {
  return detail::find_isomorphism(detail::signature_of(a), detail::signature_of(b));
}

/// Map preserves nu, mu and 1 (not necessarily bijective).
inline bool is_field_morphism(const FiniteThreeField& a, const FiniteThreeField& b, const std::vector<Elem>& map) {
  if (map.size() != a.size()) return false;
  for (Elem x : map)
    if (x >= b.size()) return false;
  return detail::preserves(detail::signature_of(a), detail::signature_of(b), map);
}

inline bool is_ring_morphism(const FiniteRing& a, const FiniteRing& b, const std::vector<Elem>& map) {
  if (map.size() != a.size()) return false;
  for (Elem x : map)
    if (x >= b.size()) return false;
  return detail::preserves(detail::signature_of(a), detail::signature_of(b), map);
}

inline bool is_bijection(const std::vector<Elem>& map, std::size_t target_size) {
  if (map.size() != target_size) return false;
  std::vector<unsigned char> seen(target_size);
  for (Elem x : map) {
    if (x >= target_size || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace trifield
