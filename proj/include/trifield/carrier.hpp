#pragma once

// Finite carriers with a ternary addition and a (binary or ternary)
// multiplication, plus exhaustive verification of the (3,3)-ring axioms.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trifield/core.hpp"

namespace trifield {

/// Dense tables over a finite ordered carrier. `nu` is flattened row-major
/// over (a, b, c); the product is either a binary table (row-major over
/// (a, b)) whose ternary form is mul(mul(a, b), c), or a stored ternary table.
class TernaryCarrier {
 public:
  TernaryCarrier() = default;

  TernaryCarrier(std::vector<std::string> labels, std::vector<Elem> nu, std::vector<Elem> mu)
      : labels_(std::move(labels)), nu_(std::move(nu)), mu_(std::move(mu)), binary_(true) {
    const std::size_t n = labels_.size();
    if (nu_.size() != n * n * n || mu_.size() != n * n)
      throw Error("carrier table sizes do not match the element count");
    index_labels();
  }

  static TernaryCarrier with_ternary_product(std::vector<std::string> labels, std::vector<Elem> nu,
                                             std::vector<Elem> mu3) {
    TernaryCarrier c;
    c.labels_ = std::move(labels);
    c.nu_ = std::move(nu);
    c.mu_ = std::move(mu3);
    c.binary_ = false;
    const std::size_t n = c.labels_.size();
    if (c.nu_.size() != n * n * n || c.mu_.size() != n * n * n)
      throw Error("carrier table sizes do not match the element count");
    c.index_labels();
    return c;
  }

  /// Builds tables from element-level operations. `nu_fn(a,b,c)` and
  /// `mu_fn(a,b)` return an index or kOutside.
  template <class Nu, class Mu>
  static TernaryCarrier build(std::vector<std::string> labels, Nu&& nu_fn, Mu&& mu_fn) {
    const std::size_t n = labels.size();
    std::vector<Elem> nu(n * n * n), mu(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) {
        mu[a * n + b] = mu_fn(a, b);
        for (Elem c = 0; c < n; ++c) nu[(a * n + b) * n + c] = nu_fn(a, b, c);
      }
    return TernaryCarrier(std::move(labels), std::move(nu), std::move(mu));
  }

  std::size_t size() const { return labels_.size(); }
  bool has_binary_product() const { return binary_; }

  Elem nu(Elem a, Elem b, Elem c) const {
    const std::size_t n = size();
    return nu_[(a * n + b) * n + c];
  }
  Elem mul(Elem a, Elem b) const {
    if (!binary_) throw Error("carrier stores a genuinely ternary product");
    return mu_[a * size() + b];
  }
  /// Ternary product; derived from the binary one when present.
  Elem product(Elem a, Elem b, Elem c) const {
    const std::size_t n = size();
    if (!binary_) return mu_[(a * n + b) * n + c];
    const Elem ab = mu_[a * n + b];
    return ab == kOutside ? kOutside : mu_[ab * n + c];
  }

  const std::string& label(Elem e) const { return labels_.at(e); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const {
    auto it = by_label_.find(std::string(label));
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<Elem>& nu_table() const { return nu_; }
  const std::vector<Elem>& mu_table() const { return mu_; }

  /// Labels of values that fell outside the carrier, keyed by flat table
  /// position; filled by `carrier_from_values` for closure diagnostics.
  std::map<std::size_t, std::string> outside_nu;
  std::map<std::size_t, std::string> outside_mu;

 private:
  void index_labels() {
    by_label_.clear();
    for (Elem i = 0; i < labels_.size(); ++i) by_label_.emplace(labels_[i], i);
  }

  std::vector<std::string> labels_;
  std::vector<Elem> nu_;
  std::vector<Elem> mu_;
  bool binary_ = true;
  std::unordered_map<std::string, Elem> by_label_;
};

/// Carrier on a finite subset of some value domain (e.g. residues). Results
/// that leave the subset become kOutside and are remembered for diagnostics.
template <class Value, class Add3, class Mul, class Label>
TernaryCarrier carrier_from_values(const std::vector<Value>& values, Add3&& add3, Mul&& mul,
                                   Label&& label) {
  std::map<Value, Elem> index;
  std::vector<std::string> labels;
  for (Elem i = 0; i < values.size(); ++i) {
    index.emplace(values[i], i);
    labels.push_back(label(values[i]));
  }
  const std::size_t n = values.size();
  std::map<std::size_t, std::string> out_nu, out_mu;
  auto lookup = [&](const Value& v, std::size_t pos, std::map<std::size_t, std::string>& out) {
    auto it = index.find(v);
    if (it != index.end()) return it->second;
    out.emplace(pos, label(v));
    return kOutside;
  };
  std::vector<Elem> nu(n * n * n), mu(n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      mu[a * n + b] = lookup(mul(values[a], values[b]), a * n + b, out_mu);
      for (Elem c = 0; c < n; ++c) {
        const std::size_t pos = (a * n + b) * n + c;
        nu[pos] = lookup(add3(values[a], values[b], values[c]), pos, out_nu);
      }
    }
  TernaryCarrier carrier(std::move(labels), std::move(nu), std::move(mu));
  carrier.outside_nu = std::move(out_nu);
  carrier.outside_mu = std::move(out_mu);
  return carrier;
}

namespace detail {

inline std::string tuple_text(const TernaryCarrier& c, std::string_view op, std::initializer_list<Elem> args) {
  std::ostringstream os;
  os << op << '(';
  bool first = true;
  for (Elem e : args) {
    if (!first) os << ',';
    os << c.label(e);
    first = false;
  }
  os << ')';
  return os.str();
}

inline std::string label_or_outside(const TernaryCarrier& c, Elem e) {
  return e == kOutside ? std::string("<outside>") : c.label(e);
}

inline void require_size(const TernaryCarrier& c, std::size_t cap, std::string_view what) {
  if (c.size() == 0) throw PreconditionError("carrier is empty");
  if (c.size() > cap) {
    std::ostringstream os;
    os << what << ": carrier has " << c.size() << " elements, cap is " << cap;
    throw LimitError(os.str());
  }
}

}  // namespace detail

/// Every table entry lies in the carrier.
inline Verdict check_closure(const TernaryCarrier& c) {
  const std::size_t n = c.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem d = 0; d < n; ++d)
        if (c.nu(a, b, d) == kOutside) {
          std::string detail = detail::tuple_text(c, "nu", {a, b, d});
          auto it = c.outside_nu.find((a * n + b) * n + d);
          detail += " = " + (it == c.outside_nu.end() ? std::string("?") : it->second) + " not in carrier";
          return Verdict::fail("closure(nu)", {a, b, d}, detail);
        }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (c.has_binary_product()) {
        if (c.mul(a, b) == kOutside) {
          std::string detail = detail::tuple_text(c, "mu", {a, b});
          auto it = c.outside_mu.find(a * n + b);
          detail += " = " + (it == c.outside_mu.end() ? std::string("?") : it->second) + " not in carrier";
          return Verdict::fail("closure(mu)", {a, b}, detail);
        }
      } else {
        for (Elem d = 0; d < n; ++d)
          if (c.product(a, b, d) == kOutside)
            return Verdict::fail("closure(mu)", {a, b, d}, detail::tuple_text(c, "mu", {a, b, d}) + " not in carrier");
      }
    }
  return Verdict::ok();
}

/// Closure, total associativity, full commutativity and unique solvability of
/// nu(a,b,x) = c. Reports the first failing axiom in that order.
inline Verdict check_ternary_group(const TernaryCarrier& c, const Limits& limits = default_limits()) {
  detail::require_size(c, limits.max_carrier, "check_ternary_group");
  const std::size_t n = c.size();
  // closure of nu only; the product is checked by check_distributivity
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem d = 0; d < n; ++d)
        if (c.nu(a, b, d) == kOutside) {
          std::string detail = detail::tuple_text(c, "nu", {a, b, d});
          auto it = c.outside_nu.find((a * n + b) * n + d);
          detail += " = " + (it == c.outside_nu.end() ? std::string("?") : it->second) + " not in carrier";
          return Verdict::fail("closure", {a, b, d}, detail);
        }

  const Elem* nu = c.nu_table().data();
  auto NU = [nu, n](Elem a, Elem b, Elem d) { return nu[(a * n + b) * n + d]; };

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x) {
        const Elem abx = NU(a, b, x);
        for (Elem t = 0; t < n; ++t) {
          const Elem bxt = NU(b, x, t);
          for (Elem u = 0; u < n; ++u) {
            const Elem lhs = NU(abx, t, u);
            if (lhs != NU(a, bxt, u) || lhs != NU(a, b, NU(x, t, u)))
              return Verdict::fail("associativity", {a, b, x, t, u},
                                   detail::tuple_text(c, "quintuple", {a, b, x, t, u}));
          }
        }
      }

  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x) {
        const Elem v = NU(a, b, x);
        if (v != NU(b, a, x) || v != NU(a, x, b))
          return Verdict::fail("commutativity", {a, b, x}, detail::tuple_text(c, "nu", {a, b, x}));
      }

  std::vector<unsigned char> seen(n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (Elem x = 0; x < n; ++x) {
        const Elem v = NU(a, b, x);
        if (seen[v]) {
          // v is hit twice, so some target has no solution; report the least one
          for (Elem target = 0; target < n; ++target) {
            bool found = false;
            for (Elem y = 0; y < n && !found; ++y) found = NU(a, b, y) == target;
            if (!found)
              return Verdict::fail("unique-solvability", {a, b, target},
                                   "nu(" + c.label(a) + "," + c.label(b) + ",x) = " + c.label(target) +
                                       " has no unique solution");
          }
        }
        seen[v] = 1;
      }
    }
  return Verdict::ok();
}

/// The three ternary distributivity laws, with the product read through
/// `product` (derived from the binary table when present).
inline Verdict check_distributivity(const TernaryCarrier& c, const Limits& limits = default_limits()) {
  detail::require_size(c, limits.max_carrier, "check_distributivity");
  if (auto v = check_closure(c); !v) return v;
  const std::size_t n = c.size();
  const Elem* nu = c.nu_table().data();
  auto NU = [nu, n](Elem a, Elem b, Elem d) { return nu[(a * n + b) * n + d]; };

  // precompute the ternary product once; n^3 entries
  std::vector<Elem> p(n * n * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem d = 0; d < n; ++d) p[(a * n + b) * n + d] = c.product(a, b, d);
  auto MU = [&p, n](Elem a, Elem b, Elem d) { return p[(a * n + b) * n + d]; };

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        const Elem s = NU(x, y, z);
        for (Elem t = 0; t < n; ++t)
          for (Elem u = 0; u < n; ++u) {
            if (MU(s, t, u) != NU(MU(x, t, u), MU(y, t, u), MU(z, t, u)))
              return Verdict::fail("left-distributivity", {x, y, z, t, u},
                                   detail::tuple_text(c, "(x,y,z,t,u)", {x, y, z, t, u}));
            if (MU(t, s, u) != NU(MU(t, x, u), MU(t, y, u), MU(t, z, u)))
              return Verdict::fail("middle-distributivity", {x, y, z, t, u},
                                   detail::tuple_text(c, "(x,y,z,t,u)", {x, y, z, t, u}));
            if (MU(t, u, s) != NU(MU(t, u, x), MU(t, u, y), MU(t, u, z)))
              return Verdict::fail("right-distributivity", {x, y, z, t, u},
                                   detail::tuple_text(c, "(x,y,z,t,u)", {x, y, z, t, u}));
          }
      }
  return Verdict::ok();
}

/// Associativity of the product (binary or ternary).
inline Verdict check_product_associativity(const TernaryCarrier& c, const Limits& limits = default_limits()) {
  detail::require_size(c, limits.max_carrier, "check_product_associativity");
  if (auto v = check_closure(c); !v) return v;
  const std::size_t n = c.size();
  if (c.has_binary_product()) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem d = 0; d < n; ++d)
          if (c.mul(c.mul(a, b), d) != c.mul(a, c.mul(b, d)))
            return Verdict::fail("product-associativity", {a, b, d}, detail::tuple_text(c, "mu", {a, b, d}));
    return Verdict::ok();
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem x = 0; x < n; ++x)
        for (Elem t = 0; t < n; ++t)
          for (Elem u = 0; u < n; ++u) {
            const Elem lhs = c.product(c.product(a, b, x), t, u);
            if (lhs != c.product(a, c.product(b, x, t), u) || lhs != c.product(a, b, c.product(x, t, u)))
              return Verdict::fail("product-associativity", {a, b, x, t, u},
                                   detail::tuple_text(c, "quintuple", {a, b, x, t, u}));
          }
  return Verdict::ok();
}

/// The unique x~ with nu(x, x, x~) = x.
inline Elem quer_add(const TernaryCarrier& c, Elem x) {
  std::optional<Elem> found;
  for (Elem t = 0; t < c.size(); ++t) {
    if (c.nu(x, x, t) != x) continue;
    if (found) throw Error("querelement of " + c.label(x) + " is not unique; carrier is not a ternary group");
    found = t;
  }
  if (!found) throw Error("querelement of " + c.label(x) + " does not exist; carrier is not a ternary group");
  return *found;
}

struct DerivedStructure {
  std::optional<Elem> unit;             // least e with mu(e,e,x) = x for all x
  std::vector<Elem> ternary_units;      // every such e
  std::optional<Elem> zero;             // additive zero that also annihilates, distinct from the unit
  std::vector<Elem> additive_neutrals;  // every z with nu(z,z,x) = x for all x
};

/// Scans for a multiplicative unit and an additive zero. A zero must be
/// neutral for nu and absorbing for the product; an element that is also the
/// unit is not reported as a zero (the one-element carrier {1}).
inline DerivedStructure detect_derived_structure(const TernaryCarrier& c) {
  DerivedStructure out;
  const std::size_t n = c.size();
  for (Elem e = 0; e < n; ++e) {
    bool unit = true;
    for (Elem x = 0; x < n && unit; ++x)
      unit = c.product(e, e, x) == x && c.product(e, x, e) == x && c.product(x, e, e) == x;
    if (unit) out.ternary_units.push_back(e);
  }
  if (!out.ternary_units.empty()) out.unit = out.ternary_units.front();

  for (Elem z = 0; z < n; ++z) {
    bool neutral = true;
    for (Elem x = 0; x < n && neutral; ++x) neutral = c.nu(z, z, x) == x;
    if (!neutral) continue;
    out.additive_neutrals.push_back(z);
    if (std::find(out.ternary_units.begin(), out.ternary_units.end(), z) != out.ternary_units.end()) continue;
    bool absorbing = true;
    for (Elem x = 0; x < n && absorbing; ++x)
      for (Elem y = 0; y < n && absorbing; ++y)
        absorbing = c.product(z, x, y) == z && c.product(x, z, y) == z && c.product(x, y, z) == z;
    if (absorbing && !out.zero) out.zero = z;
  }
  return out;
}

/// A unital 3-field on a finite carrier: binary product forming a group with
/// identity `one`, and no additive zero.
class FiniteThreeField {
 public:
  FiniteThreeField() = default;

  FiniteThreeField(TernaryCarrier carrier, Elem one, std::string origin = {})
      : carrier_(std::move(carrier)), one_(one), origin_(std::move(origin)) {
    const std::size_t n = carrier_.size();
    if (n == 0) throw PreconditionError("a 3-field needs at least one element");
    if (!carrier_.has_binary_product()) throw PreconditionError("a unital 3-field stores a binary product");
    if (one_ >= n) throw PreconditionError("unit index out of range");
    if (auto v = check_closure(carrier_); !v) throw PreconditionError("not closed: " + v.detail);
    inverse_.assign(n, kOutside);
    std::vector<unsigned char> seen(n);
    for (Elem a = 0; a < n; ++a) {
      if (carrier_.mul(one_, a) != a || carrier_.mul(a, one_) != a)
        throw PreconditionError(carrier_.label(one_) + " is not a unit for " + carrier_.label(a));
      std::fill(seen.begin(), seen.end(), 0);
      for (Elem b = 0; b < n; ++b) {
        const Elem ab = carrier_.mul(a, b);
        if (seen[ab]) throw PreconditionError("element " + carrier_.label(a) + " is not invertible");
        seen[ab] = 1;
        if (ab == one_) inverse_[a] = b;
      }
    }
    if (auto d = detect_derived_structure(carrier_); d.zero)
      throw PreconditionError("carrier has an additive zero " + carrier_.label(*d.zero));
  }

  const TernaryCarrier& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }
  Elem one() const { return one_; }
  const std::string& origin() const { return origin_; }
  void set_origin(std::string o) { origin_ = std::move(o); }

  Elem nu(Elem a, Elem b, Elem c) const { return carrier_.nu(a, b, c); }
  Elem mul(Elem a, Elem b) const { return carrier_.mul(a, b); }
  Elem inverse(Elem a) const { return inverse_[a]; }
  const std::string& label(Elem e) const { return carrier_.label(e); }
  Elem find(std::string_view label) const {
    auto e = carrier_.find(label);
    if (!e) throw PreconditionError("no element labelled '" + std::string(label) + "'");
    return *e;
  }
  bool is_commutative() const {
    for (Elem a = 0; a < size(); ++a)
      for (Elem b = a + 1; b < size(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  TernaryCarrier carrier_;
  Elem one_ = 0;
  std::string origin_;
  std::vector<Elem> inverse_;
};

/// Runs the full axiom suite on a field: ternary group, distributivity,
/// product associativity, unit present and no zero.
inline Verdict check_field_axioms(const FiniteThreeField& f, const Limits& limits = default_limits()) {
  if (auto v = check_ternary_group(f.carrier(), limits); !v) return v;
  if (auto v = check_distributivity(f.carrier(), limits); !v) return v;
  if (auto v = check_product_associativity(f.carrier(), limits); !v) return v;
  const auto d = detect_derived_structure(f.carrier());
  if (!d.unit) return Verdict::fail("unit", {}, "no multiplicative unit");
  if (d.zero) return Verdict::fail("no-zero", {*d.zero}, "additive zero " + f.label(*d.zero));
  return Verdict::ok();
}

/// A (3,3)-field whose product is genuinely ternary: no unit exists.
class ProperThreeThreeField {
 public:
  explicit ProperThreeThreeField(TernaryCarrier carrier) : carrier_(std::move(carrier)) {
    if (carrier_.has_binary_product()) throw PreconditionError("expected a ternary product table");
    if (auto d = detect_derived_structure(carrier_); d.unit)
      throw PreconditionError("product has a unit " + carrier_.label(*d.unit) + "; the field is not proper");
  }
  const TernaryCarrier& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.size(); }

 private:
  TernaryCarrier carrier_;
};

/// The set t*F1 inside F with inherited addition and ternary product, where
/// F1 is a unital 3-subfield, t lies outside F1 and t*t lies in F1.
inline ProperThreeThreeField twisted_coset(const FiniteThreeField& field, const std::vector<Elem>& subfield, Elem t) {
  const std::size_t n = field.size();
  ElemSet sub(n);
  for (Elem e : subfield) {
    if (e >= n) throw PreconditionError("subfield element out of range");
    sub.insert(e);
  }
  if (!sub.contains(field.one())) throw PreconditionError("subfield does not contain the unit");
  for (Elem a : subfield)
    for (Elem b : subfield) {
      if (!sub.contains(field.mul(a, b))) throw PreconditionError("subfield not closed under the product");
      for (Elem c : subfield)
        if (!sub.contains(field.nu(a, b, c))) throw PreconditionError("subfield not closed under addition");
    }
  if (t >= n) throw PreconditionError("t out of range");
  if (sub.contains(t)) throw PreconditionError("t = " + field.label(t) + " lies in the subfield");
  if (!sub.contains(field.mul(t, t))) throw PreconditionError("t*t does not lie in the subfield");

  ElemSet coset_set(n);
  for (Elem f : subfield) coset_set.insert(field.mul(t, f));
  const std::vector<Elem> coset = coset_set.elements();
  std::vector<Elem> position(n, kOutside);
  std::vector<std::string> labels;
  for (Elem i = 0; i < coset.size(); ++i) {
    position[coset[i]] = i;
    labels.push_back(field.label(coset[i]));
  }
  const std::size_t m = coset.size();
  std::vector<Elem> nu(m * m * m), mu3(m * m * m);
  for (Elem a = 0; a < m; ++a)
    for (Elem b = 0; b < m; ++b)
      for (Elem c = 0; c < m; ++c) {
        const Elem s = position[field.nu(coset[a], coset[b], coset[c])];
        const Elem p = position[field.mul(field.mul(coset[a], coset[b]), coset[c])];
        if (s == kOutside) throw Error("coset not closed under addition");
        if (p == kOutside) throw Error("coset not closed under the ternary product");
        nu[(a * m + b) * m + c] = s;
        mu3[(a * m + b) * m + c] = p;
      }
  return ProperThreeThreeField(TernaryCarrier::with_ternary_product(std::move(labels), std::move(nu), std::move(mu3)));
}

}  // namespace trifield
