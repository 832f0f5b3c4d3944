#pragma once

// 3-vector spaces and free resolutions; Toeplitz, triangular, quaternion and
// group 3-algebras over a finite 3-field F, with all coordinates in U(F).

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/envelope.hpp"
#include "trifield/iso.hpp"
#include "trifield/poly_fields.hpp"
#include "trifield/ring.hpp"

namespace trifield {

namespace detail {

inline std::uint64_t encode(const std::vector<Elem>& digits, std::size_t base) {
  std::uint64_t c = 0;
  for (std::size_t i = digits.size(); i-- > 0;) c = c * base + digits[i];
  return c;
}

inline std::vector<Elem> decode(std::uint64_t code, std::size_t len, std::size_t base) {
  std::vector<Elem> d(len);
  for (std::size_t i = 0; i < len; ++i) {
    d[i] = static_cast<Elem>(code % base);
    code /= base;
  }
  return d;
}

inline std::string tuple_label(const FiniteRing& r, const std::vector<Elem>& v, char open = '(', char close = ')') {
  std::string s(1, open);
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + r.label(v[i]);
  return s + close;
}

inline std::uint64_t checked_power(std::size_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) throw LimitError("carrier exceeds the enumeration cap");
  }
  return r;
}

}  // namespace detail

/// A commutative 3-group V inside a finite U(F)-module W, with the scalar
/// action of U(F) on W.
class ThreeVectorSpace {
 public:
  ThreeVectorSpace(EnvelopeRing scalars, std::vector<std::string> labels, std::vector<Elem> add, std::vector<Elem> act,
                   ElemSet carrier)
      : scalars_(std::move(scalars)),
        labels_(std::move(labels)),
        add_(std::move(add)),
        act_(std::move(act)),
        carrier_(std::move(carrier)) {}

  const EnvelopeRing& scalars() const { return scalars_; }
  const FiniteThreeField& field() const { return scalars_.base(); }
  std::size_t ambient_size() const { return labels_.size(); }
  const ElemSet& carrier() const { return carrier_; }
  std::size_t size() const { return carrier_.count(); }
  Elem add(Elem a, Elem b) const { return add_[a * ambient_size() + b]; }
  Elem act(Elem lambda, Elem w) const { return act_[lambda * ambient_size() + w]; }
  Elem nu(Elem a, Elem b, Elem c) const { return add(add(a, b), c); }
  const std::string& label(Elem w) const { return labels_.at(w); }
  Elem zero() const {
    for (Elem w = 0; w < ambient_size(); ++w)
      if (add(w, w) == w) return w;
    throw Error("ambient module has no zero");
  }
  /// sum lambda_i v_i in W.
  Elem combination(const std::vector<Elem>& lambdas, const std::vector<Elem>& vs) const {
    Elem acc = zero();
    for (std::size_t i = 0; i < vs.size(); ++i) acc = add(acc, act(lambdas[i], vs[i]));
    return acc;
  }

  /// Closure, unique solvability, 1 v = v, module laws on W, and closure of
  /// two-term combinations lambda v + mu w with lambda + mu in F.
  Verdict verify() const {
    const FiniteRing& u = scalars_.ring();
    const auto members = carrier_.elements();
    const std::size_t w = ambient_size();
    for (Elem a : members)
      for (Elem b : members)
        for (Elem c : members)
          if (!carrier_.contains(nu(a, b, c))) return Verdict::fail("closure", {a, b, c}, label(a) + "," + label(b) + "," + label(c));
    for (Elem a : members)
      for (Elem b : members)
        for (Elem c : members) {
          std::size_t solutions = 0;
          for (Elem x : members) solutions += nu(a, b, x) == c;
          if (solutions != 1) return Verdict::fail("unique-solvability", {a, b, c});
        }
    for (Elem v = 0; v < w; ++v) {
      if (act(u.one(), v) != v) return Verdict::fail("unit-action", {v}, label(v));
      for (Elem l = 0; l < u.size(); ++l)
        for (Elem m = 0; m < u.size(); ++m) {
          if (act(u.add(l, m), v) != add(act(l, v), act(m, v))) return Verdict::fail("scalar-distributivity", {l, m, v});
          if (act(u.mul(l, m), v) != act(l, act(m, v))) return Verdict::fail("action-associativity", {l, m, v});
        }
      for (Elem x = 0; x < w; ++x)
        for (Elem l = 0; l < u.size(); ++l)
          if (act(l, add(v, x)) != add(act(l, v), act(l, x))) return Verdict::fail("vector-distributivity", {l, v, x});
    }
    for (Elem l = 0; l < u.size(); ++l)
      for (Elem m = 0; m < u.size(); ++m) {
        if (!scalars_.is_odd(u.add(l, m))) continue;
        for (Elem a : members)
          for (Elem b : members)
            if (!carrier_.contains(add(act(l, a), act(m, b)))) return Verdict::fail("combination", {l, m, a, b});
      }
    return Verdict::ok();
  }

 private:
  EnvelopeRing scalars_;
  std::vector<std::string> labels_;
  std::vector<Elem> add_, act_;
  ElemSet carrier_;
};

namespace detail {

/// W = U(F)^n with coordinatewise operations; `in_carrier` selects V.
template <class Pred>
ThreeVectorSpace tuple_space(const FiniteThreeField& f, std::size_t n, Pred in_carrier, const Limits& limits) {
  EnvelopeRing u = build_envelope(f, limits);
  const FiniteRing& r = u.ring();
  const std::size_t base = r.size();
  const std::size_t w = static_cast<std::size_t>(checked_power(base, n, 1u << 16));
  std::vector<std::string> labels(w);
  std::vector<Elem> add(w * w), act(base * w);
  ElemSet carrier(w);
  for (std::size_t a = 0; a < w; ++a) {
    const auto da = decode(a, n, base);
    labels[a] = tuple_label(r, da);
    if (in_carrier(u, da)) carrier.insert(static_cast<Elem>(a));
    for (std::size_t b = 0; b < w; ++b) {
      const auto db = decode(b, n, base);
      std::vector<Elem> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = r.add(da[i], db[i]);
      add[a * w + b] = static_cast<Elem>(encode(s, base));
    }
    for (Elem l = 0; l < base; ++l) {
      std::vector<Elem> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = r.mul(l, da[i]);
      act[l * w + a] = static_cast<Elem>(encode(s, base));
    }
  }
  return ThreeVectorSpace(std::move(u), std::move(labels), std::move(add), std::move(act), std::move(carrier));
}

}  // namespace detail

/// (F^n)^free: tuples over U(F) whose coordinate sum lies in F.
inline ThreeVectorSpace free_space(const FiniteThreeField& f, std::size_t n, const Limits& limits = default_limits()) {
  if (n == 0) throw PreconditionError("n must be positive");
  return detail::tuple_space(
      f, n,
      [](const EnvelopeRing& u, const std::vector<Elem>& d) {
        Elem s = u.ring().zero();
        for (Elem x : d) s = u.ring().add(s, x);
        return u.is_odd(s);
      },
      limits);
}

/// F^n: tuples with every coordinate in F.
inline ThreeVectorSpace power_space(const FiniteThreeField& f, std::size_t n, const Limits& limits = default_limits()) {
  if (n == 0) throw PreconditionError("n must be positive");
  return detail::tuple_space(
      f, n,
      [](const EnvelopeRing& u, const std::vector<Elem>& d) {
        return std::all_of(d.begin(), d.end(), [&](Elem x) { return u.is_odd(x); });
      },
      limits);
}

/// A as a 3-vector space over its prime field P: W = U(A), with U(P) acting
/// through the ring morphism U(P) -> U(A) that extends P -> A.
inline ThreeVectorSpace space_over_prime_field(const FiniteThreeField& a, const Limits& limits = default_limits()) {
  const PrimeSubfield p = prime_subfield(a, limits);
  EnvelopeRing up = build_envelope(zodd(p.zodd_exponent, limits), limits);
  const EnvelopeRing ua = build_envelope(a, limits);
  std::vector<Elem> phi;
  for (Elem e : p.isomorphism) phi.push_back(ua.odd(e));
  const std::vector<Elem> lift = universal_extension(up, ua.ring(), phi);
  const FiniteRing& r = ua.ring();
  const std::size_t w = r.size();
  std::vector<Elem> act(up.size() * w);
  for (Elem l = 0; l < up.size(); ++l)
    for (Elem x = 0; x < w; ++x) act[l * w + x] = r.mul(lift[l], x);
  return ThreeVectorSpace(std::move(up), r.labels(), r.add_table(), std::move(act), ua.odd_part_set());
}

struct FreeResolution {
  std::size_t generators = 0;
  std::size_t free_size = 0;     // |V^free| = 2^{n-1} |F|^n
  std::size_t space_size = 0;    // |V|
  std::size_t kernel_size = 0;   // fiber of phi_V over phi_V(e_1)
  bool fibers_uniform = true;    // every fiber has kernel_size elements, so V = V^free / ker
  std::size_t formula_value = 0;  // 2^{n-1} |F|^n / |ker|
  bool formula_holds = false;
};

/// phi_V : V^free -> V, (lambda_i) -> sum lambda_i v_i.
inline FreeResolution free_resolution(const ThreeVectorSpace& v, const std::vector<Elem>& generators,
                                      const Limits& limits = default_limits()) {
  if (generators.empty()) throw PreconditionError("at least one generator is required");
  for (Elem g : generators)
    if (!v.carrier().contains(g)) throw PreconditionError("generator " + v.label(g) + " is not in V");
  const std::size_t n = generators.size();
  const ThreeVectorSpace vfree = free_space(v.field(), n, limits);
  const std::size_t base = vfree.scalars().size();
  std::map<Elem, std::size_t> fibers;
  for (Elem lam : vfree.carrier().elements()) {
    const auto coeffs = detail::decode(lam, n, base);
    const Elem img = v.combination(coeffs, generators);
    if (!v.carrier().contains(img)) throw Error("phi_V leaves V at " + vfree.label(lam));
    ++fibers[img];
  }
  if (fibers.size() != v.size()) {
    std::ostringstream os;
    os << "generators do not generate V: they reach " << fibers.size() << " of " << v.size() << " elements";
    throw PreconditionError(os.str());
  }
  FreeResolution r;
  r.generators = n;
  r.free_size = vfree.size();
  r.space_size = v.size();
  std::vector<Elem> e1(n, vfree.scalars().ring().zero());
  e1[0] = vfree.scalars().ring().one();
  r.kernel_size = fibers.at(v.combination(e1, generators));
  for (const auto& [img, count] : fibers) r.fibers_uniform &= count == r.kernel_size;
  r.formula_value = r.free_size / r.kernel_size;
  r.formula_holds = r.fibers_uniform && r.free_size % r.kernel_size == 0 && r.formula_value == r.space_size;
  return r;
}

// --------------------------------------------------------- matrix fields

/// Lower-triangular matrices over U(F) forming a 3-field: Toeplitz
/// (constant diagonals) or general triangular.
class MatrixField {
 public:
  enum class Kind { Toeplitz, Triangular };

  Kind kind() const { return kind_; }
  std::size_t order() const { return n_; }
  const EnvelopeRing& scalars() const { return scalars_; }
  const FiniteThreeField& field() const { return *field_; }
  /// Row-major n x n entries in U(F).
  const std::vector<Elem>& matrix(Elem e) const { return matrices_[e]; }
  std::optional<Elem> find(const std::vector<Elem>& m) const {
    const auto it = index_.find(detail::encode(m, scalars_.size()));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Elem> multiply(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
    const FiniteRing& r = scalars_.ring();
    std::vector<Elem> c(n_ * n_, r.zero());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        Elem s = r.zero();
        for (std::size_t k = j; k <= i; ++k) s = r.add(s, r.mul(a[i * n_ + k], b[k * n_ + j]));
        c[i * n_ + j] = s;
      }
    return c;
  }

  /// Forward substitution: X_ii = L_ii^-1, X_ij = -L_ii^-1 sum_{j<=k<i} L_ik X_kj.
  std::vector<Elem> inverse_matrix(const std::vector<Elem>& l) const {
    const FiniteRing& r = scalars_.ring();
    const FiniteThreeField& f = scalars_.base();
    std::vector<Elem> x(n_ * n_, r.zero());
    for (std::size_t i = 0; i < n_; ++i) {
      const Elem d = l[i * n_ + i];
      if (!scalars_.is_odd(d)) throw Error("diagonal entry is not in F");
      const Elem dinv = scalars_.odd(f.inverse(d));
      x[i * n_ + i] = dinv;
      for (std::size_t j = 0; j < i; ++j) {
        Elem s = r.zero();
        for (std::size_t k = j; k < i; ++k) s = r.add(s, r.mul(l[i * n_ + k], x[k * n_ + j]));
        x[i * n_ + j] = r.neg(r.mul(dinv, s));
      }
    }
    return x;
  }

  std::string matrix_label(const std::vector<Elem>& m) const {
    const FiniteRing& r = scalars_.ring();
    std::string s = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      s += i ? ";" : "";
      for (std::size_t j = 0; j < n_; ++j) s += (j ? "," : "") + r.label(m[i * n_ + j]);
    }
    return s + "]";
  }

 private:
  friend MatrixField toeplitz_field(std::size_t, const FiniteThreeField&, const Limits&);
  friend MatrixField triangular_field(std::size_t, const FiniteThreeField&, const Limits&);

  MatrixField(Kind kind, std::size_t n, EnvelopeRing scalars) : kind_(kind), n_(n), scalars_(std::move(scalars)) {}

  void materialize(std::vector<std::vector<Elem>> matrices, std::vector<std::string> labels, std::string origin) {
    matrices_ = std::move(matrices);
    for (Elem i = 0; i < matrices_.size(); ++i) index_[detail::encode(matrices_[i], scalars_.size())] = i;
    auto lookup = [&](const std::vector<Elem>& m) {
      const auto e = find(m);
      return e ? *e : kOutside;
    };
    const FiniteRing& r = scalars_.ring();
    std::vector<Elem> identity(n_ * n_, r.zero());
    for (std::size_t i = 0; i < n_; ++i) identity[i * n_ + i] = r.one();
    auto carrier = TernaryCarrier::build(
        std::move(labels),
        [&](Elem a, Elem b, Elem c) {
          std::vector<Elem> s(n_ * n_);
          for (std::size_t k = 0; k < s.size(); ++k)
            s[k] = r.add(r.add(matrices_[a][k], matrices_[b][k]), matrices_[c][k]);
          return lookup(s);
        },
        [&](Elem a, Elem b) { return lookup(multiply(matrices_[a], matrices_[b])); });
    field_.emplace(std::move(carrier), lookup(identity), std::move(origin));
  }

  Kind kind_;
  std::size_t n_;
  EnvelopeRing scalars_;
  std::vector<std::vector<Elem>> matrices_;
  std::unordered_map<std::uint64_t, Elem> index_;
  std::optional<FiniteThreeField> field_;
};

/// T(n, F): lower-triangular Toeplitz matrices, first column (c_0, ..., c_{n-1})
/// with c_0 in F and c_k in U(F). |T(n, F)| = |F| |U(F)|^{n-1}.
inline MatrixField toeplitz_field(std::size_t n, const FiniteThreeField& f, const Limits& limits = default_limits()) {
  if (n == 0) throw PreconditionError("n must be positive");
  MatrixField m(MatrixField::Kind::Toeplitz, n, build_envelope(f, limits));
  const FiniteRing& r = m.scalars().ring();
  const std::size_t ub = r.size(), fb = f.size();
  const std::uint64_t count = fb * detail::checked_power(ub, n - 1, limits.max_materialize);
  if (count > limits.max_materialize) throw LimitError("Toeplitz field exceeds the materialization cap");
  std::vector<std::vector<Elem>> mats;
  std::vector<std::string> labels;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Elem> col(n);
    col[0] = static_cast<Elem>(code % fb);  // odd part of U(F) has indices 0..|F|-1
    std::uint64_t rest = code / fb;
    for (std::size_t k = 1; k < n; ++k) {
      col[k] = static_cast<Elem>(rest % ub);
      rest /= ub;
    }
    std::vector<Elem> mat(n * n, r.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) mat[i * n + j] = col[i - j];
    labels.push_back(detail::tuple_label(r, col, '[', ']'));
    mats.push_back(std::move(mat));
  }
  m.materialize(std::move(mats), std::move(labels), "T(" + std::to_string(n) + ", " + f.origin() + ")");
  return m;
}

/// D(n, F): lower-triangular matrices with diagonal in F and entries below
/// it in U(F). Noncommutative for n > 1 unless F is tiny.
inline MatrixField triangular_field(std::size_t n, const FiniteThreeField& f, const Limits& limits = default_limits()) {
  if (n == 0) throw PreconditionError("n must be positive");
  MatrixField m(MatrixField::Kind::Triangular, n, build_envelope(f, limits));
  const FiniteRing& r = m.scalars().ring();
  const std::size_t ub = r.size(), fb = f.size();
  const std::size_t lower = n * (n - 1) / 2;
  const std::uint64_t count = detail::checked_power(fb, n, limits.max_materialize) *
                              detail::checked_power(ub, lower, limits.max_materialize);
  if (count > limits.max_materialize) throw LimitError("triangular field exceeds the materialization cap");
  std::vector<std::vector<Elem>> mats;
  std::vector<std::string> labels;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Elem> mat(n * n, r.zero());
    std::uint64_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      mat[i * n + i] = static_cast<Elem>(rest % fb);
      rest /= fb;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        mat[i * n + j] = static_cast<Elem>(rest % ub);
        rest /= ub;
      }
    labels.push_back(m.matrix_label(mat));
    mats.push_back(std::move(mat));
  }
  m.materialize(std::move(mats), std::move(labels), "D(" + std::to_string(n) + ", " + f.origin() + ")");
  return m;
}

/// The isomorphism T(n, F) -> F(n) = F[x]/<(x-1)^n> for F = (Z/2^m)^odd,
/// sending the first column to the coordinates in powers of (x - 1).
inline std::optional<std::vector<Elem>> toeplitz_to_polynomial_field(const MatrixField& t, const QuotientField& fn,
                                                                     const Limits& limits = default_limits()) {
  if (t.kind() != MatrixField::Kind::Toeplitz) throw PreconditionError("not a Toeplitz field");
  const unsigned m = fn.spec().base_precision;
  const auto psi = find_isomorphism(t.scalars().ring(), zmod_ring(1u << m));
  if (!psi || fn.variables().size() != 1 || fn.ring().dimension() != t.order()) return std::nullopt;
  const std::size_t n = t.order();
  std::vector<Elem> map(t.field().size());
  for (Elem e = 0; e < t.field().size(); ++e) {
    TruncatedPolyRing::Vec u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = (*psi)[t.matrix(e)[k * n]];
    const auto idx = fn.index_of(u);
    if (!idx) return std::nullopt;
    map[e] = *idx;
  }
  (void)limits;
  if (!is_bijection(map, fn.size()) || !is_field_morphism(t.field(), fn.field(), map)) return std::nullopt;
  return map;
}

/// Least pair (a, b) in index order with ab != ba.
inline std::optional<std::pair<Elem, Elem>> noncommuting_pair(const FiniteThreeField& f) {
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b)
      if (f.mul(a, b) != f.mul(b, a)) return std::pair{a, b};
  return std::nullopt;
}

// ------------------------------------------------------------ quaternions

/// HF = (F^4)^free with i1^2 = i2^2 = i3^2 = i1 i2 i3 = -1.
class QuaternionField {
 public:
  using Quat = std::array<Elem, 4>;

  const EnvelopeRing& scalars() const { return scalars_; }
  const FiniteThreeField& field() const { return *field_; }
  const Quat& quat(Elem e) const { return quats_[e]; }
  Elem find(const Quat& q) const {
    const auto it = index_.find(detail::encode({q.begin(), q.end()}, scalars_.size()));
    return it == index_.end() ? kOutside : it->second;
  }

  Quat multiply(const Quat& a, const Quat& b) const {
    const FiniteRing& r = scalars_.ring();
    auto m = [&](int i, int j) { return r.mul(a[i], b[j]); };
    auto sum = [&](std::initializer_list<Elem> pos, std::initializer_list<Elem> neg) {
      Elem s = r.zero();
      for (Elem x : pos) s = r.add(s, x);
      for (Elem x : neg) s = r.sub(s, x);
      return s;
    };
    return {sum({m(0, 0)}, {m(1, 1), m(2, 2), m(3, 3)}), sum({m(0, 1), m(1, 0), m(2, 3)}, {m(3, 2)}),
            sum({m(0, 2), m(2, 0), m(3, 1)}, {m(1, 3)}), sum({m(0, 3), m(3, 0), m(1, 2)}, {m(2, 1)})};
  }
  Quat conjugate(const Quat& q) const {
    const FiniteRing& r = scalars_.ring();
    return {q[0], r.neg(q[1]), r.neg(q[2]), r.neg(q[3])};
  }
  /// q qbar = a0^2 + a1^2 + a2^2 + a3^2.
  Elem norm(const Quat& q) const {
    const FiniteRing& r = scalars_.ring();
    Elem s = r.zero();
    for (Elem a : q) s = r.add(s, r.mul(a, a));
    return s;
  }
  /// qbar / (q qbar); throws when the norm is not in F.
  Quat inverse(const Quat& q) const {
    const Elem nq = norm(q);
    if (!scalars_.is_odd(nq)) throw Error("q qbar is not invertible; unsupported base field");
    const Elem ninv = scalars_.odd(scalars_.base().inverse(nq));
    Quat c = conjugate(q);
    for (Elem& x : c) x = scalars_.ring().mul(x, ninv);
    return c;
  }
  /// The unit quaternions i_1, i_2, i_3 as field elements.
  Elem unit(int k) const {
    const FiniteRing& r = scalars_.ring();
    Quat q{r.zero(), r.zero(), r.zero(), r.zero()};
    q[static_cast<std::size_t>(k)] = r.one();
    return find(q);
  }
  std::string quat_label(const Quat& q) const {
    return detail::tuple_label(scalars_.ring(), {q.begin(), q.end()});
  }

 private:
  friend QuaternionField quaternion_field(const FiniteThreeField&, const Limits&);
  explicit QuaternionField(EnvelopeRing s) : scalars_(std::move(s)) {}

  EnvelopeRing scalars_;
  std::vector<Quat> quats_;
  std::unordered_map<std::uint64_t, Elem> index_;
  std::optional<FiniteThreeField> field_;
};

inline QuaternionField quaternion_field(const FiniteThreeField& f, const Limits& limits = default_limits()) {
  QuaternionField h(build_envelope(f, limits));
  const FiniteRing& r = h.scalars_.ring();
  const std::size_t ub = r.size();
  const std::uint64_t total = detail::checked_power(ub, 4, 2 * limits.max_materialize);
  if (total / 2 > limits.max_materialize) throw LimitError("quaternion field exceeds the materialization cap");
  std::vector<std::string> labels;
  for (std::uint64_t code = 0; code < total; ++code) {
    const auto d = detail::decode(code, 4, ub);
    Elem s = r.zero();
    for (Elem x : d) s = r.add(s, x);
    if (!h.scalars_.is_odd(s)) continue;
    const QuaternionField::Quat q{d[0], d[1], d[2], d[3]};
    if (!h.scalars_.is_odd(h.norm(q))) throw Error("q qbar is not invertible for " + h.quat_label(q));
    h.index_[code] = static_cast<Elem>(h.quats_.size());
    h.quats_.push_back(q);
    labels.push_back(h.quat_label(q));
  }
  const FiniteRing& rr = r;
  auto carrier = TernaryCarrier::build(
      std::move(labels),
      [&](Elem a, Elem b, Elem c) {
        QuaternionField::Quat s;
        for (std::size_t k = 0; k < 4; ++k) s[k] = rr.add(rr.add(h.quats_[a][k], h.quats_[b][k]), h.quats_[c][k]);
        return h.find(s);
      },
      [&](Elem a, Elem b) { return h.find(h.multiply(h.quats_[a], h.quats_[b])); });
  const QuaternionField::Quat one{r.one(), r.zero(), r.zero(), r.zero()};
  h.field_.emplace(std::move(carrier), h.find(one), "H(" + f.origin() + ")");
  return h;
}

struct QuaternionReport {
  std::size_t size = 0;
  bool all_invertible = true;       // q q^-1 = q^-1 q = 1 with q^-1 = qbar / (q qbar)
  bool gamma_identity = true;       // sum c = sum a sum b - 2 sum gamma
  bool conjugation_anti = true;     // conj(pq) = conj(q) conj(p)
  Elem i1i2 = 0, i2i1 = 0;
  bool noncommutative = false;
};

/// Exhaustive checks of the quaternion construction.
inline QuaternionReport verify_quaternions(const QuaternionField& h) {
  const FiniteThreeField& f = h.field();
  const FiniteRing& r = h.scalars().ring();
  QuaternionReport rep;
  rep.size = f.size();
  for (Elem a = 0; a < f.size(); ++a) {
    const auto& qa = h.quat(a);
    const Elem inv = h.find(h.inverse(qa));
    if (inv == kOutside || f.mul(a, inv) != f.one() || f.mul(inv, a) != f.one()) rep.all_invertible = false;
    for (Elem b = 0; b < f.size(); ++b) {
      const auto& qb = h.quat(b);
      const auto c = h.multiply(qa, qb);
      Elem sa = r.zero(), sb = r.zero(), sc = r.zero();
      for (std::size_t k = 0; k < 4; ++k) {
        sa = r.add(sa, qa[k]);
        sb = r.add(sb, qb[k]);
        sc = r.add(sc, c[k]);
      }
      Elem gamma = r.zero();
      for (auto [i, j] : {std::pair{1, 1}, {2, 2}, {3, 3}, {3, 2}, {1, 3}, {2, 1}})
        gamma = r.add(gamma, r.mul(qa[static_cast<std::size_t>(i)], qb[static_cast<std::size_t>(j)]));
      if (sc != r.sub(r.mul(sa, sb), r.add(gamma, gamma))) rep.gamma_identity = false;
      if (h.conjugate(c) != h.multiply(h.conjugate(qb), h.conjugate(qa))) rep.conjugation_anti = false;
      if (f.mul(a, b) != f.mul(b, a)) rep.noncommutative = true;
    }
  }
  rep.i1i2 = f.mul(h.unit(1), h.unit(2));
  rep.i2i1 = f.mul(h.unit(2), h.unit(1));
  return rep;
}

// ------------------------------------------------------ group 3-algebras

struct FiniteGroup {
  std::vector<std::string> labels;
  std::vector<Elem> table;  // row-major products
  Elem identity = 0;
  std::size_t size() const { return labels.size(); }
  Elem mul(Elem a, Elem b) const { return table[a * size() + b]; }
};

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionError("group order must be positive");
  FiniteGroup g;
  for (std::size_t i = 0; i < n; ++i) g.labels.push_back(i == 0 ? "e" : i == 1 ? "g" : "g^" + std::to_string(i));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.table.push_back(static_cast<Elem>((a + b) % n));
  return g;
}

/// FG = { phi : G -> U(F) | sum phi(g) in F } with convolution.
class GroupAlgebra {
 public:
  GroupAlgebra(FiniteGroup g, EnvelopeRing scalars) : g_(std::move(g)), scalars_(std::move(scalars)) {}

  const FiniteGroup& group() const { return g_; }
  const EnvelopeRing& scalars() const { return scalars_; }
  std::uint64_t code(const std::vector<Elem>& phi) const { return detail::encode(phi, scalars_.size()); }
  std::vector<Elem> coords(std::uint64_t code) const { return detail::decode(code, g_.size(), scalars_.size()); }

  bool in_carrier(const std::vector<Elem>& phi) const {
    Elem s = scalars_.ring().zero();
    for (Elem x : phi) s = scalars_.ring().add(s, x);
    return scalars_.is_odd(s);
  }
  std::vector<Elem> unit() const {
    std::vector<Elem> d(g_.size(), scalars_.ring().zero());
    d[g_.identity] = scalars_.ring().one();
    return d;
  }
  std::vector<Elem> convolve(const std::vector<Elem>& a, const std::vector<Elem>& b) const {
    const FiniteRing& r = scalars_.ring();
    std::vector<Elem> c(g_.size(), r.zero());
    for (Elem x = 0; x < g_.size(); ++x) {
      if (a[x] == r.zero()) continue;
      for (Elem y = 0; y < g_.size(); ++y) c[g_.mul(x, y)] = r.add(c[g_.mul(x, y)], r.mul(a[x], b[y]));
    }
    return c;
  }
  /// Powers of phi return to the unit iff phi is invertible in the finite
  /// monoid FG.
  bool invertible(const std::vector<Elem>& phi) const {
    const auto one = unit();
    std::unordered_set<std::uint64_t> seen;
    std::vector<Elem> p = phi;
    while (p != one) {
      if (!seen.insert(code(p)).second) return false;
      p = convolve(p, phi);
    }
    return true;
  }
  std::string label(const std::vector<Elem>& phi) const {
    const FiniteRing& r = scalars_.ring();
    std::string s;
    for (Elem x = 0; x < g_.size(); ++x) {
      if (phi[x] == r.zero()) continue;
      s += (s.empty() ? "" : "+") + (phi[x] == r.one() ? std::string() : r.label(phi[x]) + "*") + g_.labels[x];
    }
    return s.empty() ? "0" : s;
  }

 private:
  FiniteGroup g_;
  EnvelopeRing scalars_;
};

struct GroupAlgebraReport {
  std::uint64_t size = 0;
  bool is_3field = false;
  bool sampled = false;
  std::optional<std::string> witness;            // a non-invertible element
  std::optional<FiniteThreeField> field;         // materialized when small
  std::vector<std::vector<Elem>> elements;       // coordinates, when materialized
};

/// Carrier, convolution, and an invertibility scan (exhaustive up to 2^16
/// elements, sampled beyond).
inline GroupAlgebraReport group_algebra(const FiniteGroup& g, const FiniteThreeField& f,
                                        const Limits& limits = default_limits(), std::size_t samples = 4096,
                                        std::uint64_t seed = 1) {
  GroupAlgebra a(g, build_envelope(f, limits));
  const std::size_t ub = a.scalars().size();
  GroupAlgebraReport rep;
  std::uint64_t total = 1;
  bool huge = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (total > (std::uint64_t{1} << 40) / ub) {
      huge = true;
      break;
    }
    total *= ub;
  }
  rep.size = huge ? 0 : total / 2;
  std::vector<std::vector<Elem>> members;
  if (!huge && rep.size <= (std::uint64_t{1} << 16)) {
    for (std::uint64_t c = 0; c < total; ++c) {
      auto phi = a.coords(c);
      if (!a.in_carrier(phi)) continue;
      if (!rep.witness && !a.invertible(phi)) rep.witness = a.label(phi);
      members.push_back(std::move(phi));
    }
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> coord(0, static_cast<Elem>(ub - 1));
    for (std::size_t s = 0; s < samples && !rep.witness; ++s) {
      std::vector<Elem> phi(g.size());
      for (auto& x : phi) x = coord(rng);
      if (!a.in_carrier(phi)) phi[0] = a.scalars().ring().add(phi[0], a.scalars().ring().one());
      if (!a.invertible(phi)) rep.witness = a.label(phi);
    }
  }
  rep.is_3field = !rep.witness;
  if (rep.is_3field && !rep.sampled && members.size() <= limits.max_materialize) {
    std::unordered_map<std::uint64_t, Elem> index;
    std::vector<std::string> labels;
    for (Elem i = 0; i < members.size(); ++i) {
      index[a.code(members[i])] = i;
      labels.push_back(a.label(members[i]));
    }
    const FiniteRing& r = a.scalars().ring();
    auto lookup = [&](const std::vector<Elem>& phi) {
      const auto it = index.find(a.code(phi));
      return it == index.end() ? kOutside : it->second;
    };
    auto carrier = TernaryCarrier::build(
        std::move(labels),
        [&](Elem x, Elem y, Elem z) {
          std::vector<Elem> s(g.size());
          for (std::size_t k = 0; k < s.size(); ++k) s[k] = r.add(r.add(members[x][k], members[y][k]), members[z][k]);
          return lookup(s);
        },
        [&](Elem x, Elem y) { return lookup(a.convolve(members[x], members[y])); });
    rep.field.emplace(std::move(carrier), lookup(a.unit()), f.origin() + "[G]");
    rep.elements = std::move(members);
  }
  return rep;
}

/// For G = Z/nZ: the map FG -> F(n) = F[x]/<(x-1)^n>, phi -> sum phi(g^k) x^k,
/// for F = (Z/2^m)^odd. A 3-field isomorphism when n is a power of two.
inline std::optional<std::vector<Elem>> cyclic_group_algebra_to_polynomial_field(const GroupAlgebraReport& fg,
                                                                                 const FiniteThreeField& f,
                                                                                 const QuotientField& fn,
                                                                                 const Limits& limits = default_limits()) {
  if (!fg.field) return std::nullopt;
  const EnvelopeRing u = build_envelope(f, limits);
  const unsigned m = fn.spec().base_precision;
  const auto psi = find_isomorphism(u.ring(), zmod_ring(1u << m));
  if (!psi) return std::nullopt;
  const auto& ring = fn.ring();
  std::vector<Elem> map;
  for (const auto& phi : fg.elements) {
    auto acc = ring.zero();
    for (std::size_t k = 0; k < phi.size(); ++k)
      acc = ring.add(acc, ring.scale((*psi)[phi[k]], ring.pow(ring.x(0), k)));
    const auto idx = fn.index_of(acc);
    if (!idx) return std::nullopt;
    map.push_back(*idx);
  }
  if (!is_bijection(map, fn.size()) || !is_field_morphism(*fg.field, fn.field(), map)) return std::nullopt;
  return map;
}

}  // namespace trifield
