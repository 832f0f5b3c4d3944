#pragma once

// Polynomial 3-algebras and their finite quotients: parity, the 2-adic norm,
// completely-even polynomials, F0(n1,...,nk) and (Z/2^m)^odd-based quotient
// fields, cardinality, products with presentations, prime subfields, Taylor
// coefficients at 1, and substitution morphisms.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/dyadic.hpp"
#include "trifield/envelope.hpp"
#include "trifield/iso.hpp"
#include "trifield/polynomial.hpp"
#include "trifield/ring.hpp"

namespace trifield {

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) { return p == Parity::Odd ? "odd" : "even"; }

/// Odd iff the coefficient sum lies in Q^odd (equivalently, is 1 mod 2).
inline Parity parity(const MPoly& p) {
  const BigRational s = p.coefficient_sum();
  if (boost::multiprecision::denominator(s) % 2 == 0)
    throw PreconditionError("coefficient sum " + s.str() + " is outside U(Q^odd)");
  return boost::multiprecision::numerator(s) % 2 != 0 ? Parity::Odd : Parity::Even;
}

/// Parity of a polynomial over U(F) given by its coefficients in an envelope.
inline Parity parity(const EnvelopeRing& u, const std::vector<Elem>& coefficients) {
  Elem s = u.ring().zero();
  for (Elem c : coefficients) s = u.ring().add(s, c);
  return u.is_odd(s) ? Parity::Odd : Parity::Even;
}

/// Exponent r with ||P||_2 = max |a_i|_2 = 2^-r.
inline long long norm2(const RatPoly& p) {
  if (p.is_zero()) throw PreconditionError("norm of the zero polynomial");
  std::optional<long long> best;
  for (const auto& c : p.coeffs())
    if (c != 0) best = std::min(best.value_or(val2(c)), val2(c));
  return *best;
}

inline long long norm2(const MPoly& p) {
  if (p.is_zero()) throw PreconditionError("norm of the zero polynomial");
  std::optional<long long> best;
  for (const auto& [e, c] : p.terms()) best = std::min(best.value_or(val2(c)), val2(c));
  return *best;
}

// --------------------------------------------------------- completely even

enum class CoeffDomain { Z2, Integer, OddRational };

struct CompletelyEvenResult {
  bool completely_even = false;
  std::optional<std::string> witness;  // an odd non-unit factor
  int x_minus_1_multiplicity = 0;      // Z2 route only
};

namespace detail {

inline CompletelyEvenResult completely_even_z2(Gf2Poly p) {
  if (p.is_zero()) throw PreconditionError("zero polynomial");
  if (p.at_one()) throw PreconditionError("polynomial is odd; completely-even is defined for even polynomials");
  CompletelyEvenResult r;
  const Gf2Poly x1 = Gf2Poly::x_plus_1();
  for (;;) {
    auto [q, rem] = p.divmod(x1);
    if (!rem.is_zero()) break;
    p = q;
    ++r.x_minus_1_multiplicity;
  }
  if (p.degree() == 0) {
    r.completely_even = true;
    return r;
  }
  // least-degree divisor of the cofactor; it is irreducible and odd
  for (std::uint64_t d = 2;; ++d) {
    if (p.divmod({d}).second.is_zero()) {
      r.witness = Gf2Poly{d}.str();
      return r;
    }
  }
}

inline bool odd_at_one(const IntPoly& p) { return p(BigInt(1)) % 2 != 0; }

inline CompletelyEvenResult completely_even_integer(const IntPoly& p, int cap) {
  if (p.is_zero()) throw PreconditionError("zero polynomial");
  if (odd_at_one(p)) throw PreconditionError("polynomial is odd; completely-even is defined for even polynomials");
  if (p.degree() > cap)
    throw LimitError("degree " + std::to_string(p.degree()) + " exceeds the Kronecker cap " + std::to_string(cap));
  std::vector<IntPoly> odd;
  const IntPoly q = primitive_part(p);
  // an even content leaves the primitive part as a candidate odd factor
  if (q.degree() >= 1 && odd_at_one(q)) odd.push_back(q);
  for (const auto& d : kronecker_divisors(q, q.degree() / 2, cap)) {
    if (d.degree() >= q.degree()) continue;
    if (odd_at_one(d)) odd.push_back(d);
    const IntPoly e = primitive_part(*exact_divide(q, d));
    if (e.degree() >= 1 && odd_at_one(e)) odd.push_back(e);
  }
  CompletelyEvenResult r;
  if (odd.empty()) {
    r.completely_even = true;
    return r;
  }
  const auto least = std::min_element(odd.begin(), odd.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  r.witness = least->str();
  return r;
}

}  // namespace detail

/// Whether the even polynomial `text` admits no factorization with an odd
/// non-unit factor. Z2: P = (x+1)^deg P. Integer and U(Q^odd): bounded
/// Kronecker search through all divisors, erroring above `cap`.
inline CompletelyEvenResult completely_even(std::string_view text, CoeffDomain domain, int cap = 8) {
  switch (domain) {
    case CoeffDomain::Z2:
      return detail::completely_even_z2(parse_gf2_poly(text));
    case CoeffDomain::Integer:
      return detail::completely_even_integer(parse_int_poly(text), cap);
    case CoeffDomain::OddRational: {
      // clearing odd denominators multiplies by a unit of U(Q^odd)
      const auto p = parse_odd_denom_poly(text);
      BigInt l = 1;
      for (const auto& c : p.coeffs()) l = l / gcd(l, c.den()) * c.den();
      std::vector<BigInt> ints;
      for (const auto& c : p.coeffs()) ints.push_back(c.num() * (l / c.den()));
      return detail::completely_even_integer(IntPoly(std::move(ints)), cap);
    }
  }
  throw PreconditionError("unknown coefficient domain");
}

inline CompletelyEvenResult completely_even(Gf2Poly p) { return detail::completely_even_z2(p); }

// ---------------------------------------------------------- Taylor at one

/// Taylor coefficients of Q at 1, mod 2, by repeated synthetic division.
inline std::vector<int> taylor_epimorphism(const UPoly<OddDenomRational>& q, unsigned n) {
  std::vector<int> out;
  UPoly<OddDenomRational> cur = q;
  for (unsigned k = 0; k < n; ++k) {
    auto [quot, rem] = cur.synthetic_division(OddDenomRational(1));
    out.push_back(rem.is_odd() ? 1 : 0);
    cur = std::move(quot);
  }
  return out;
}

inline std::vector<int> taylor_epimorphism(Gf2Poly q, unsigned n) {
  std::vector<int> out;
  for (unsigned k = 0; k < n; ++k) {
    auto [quot, rem] = q.divmod(Gf2Poly::x_plus_1());
    out.push_back(rem.is_zero() ? 0 : 1);
    q = quot;
  }
  return out;
}

inline std::vector<int> taylor_epimorphism(std::string_view text, unsigned n) {
  return taylor_epimorphism(parse_odd_denom_poly(text), n);
}

// ------------------------------------------------------- truncated rings

/// (Z/2^m)[u_1..u_k] / <u_i^{n_i}>, dense over the N = prod n_i monomials
/// u^a with a_i < n_i. Monomial index is mixed radix with u_1 fastest.
class TruncatedPolyRing {
 public:
  using Vec = std::vector<std::uint64_t>;

  TruncatedPolyRing(std::vector<unsigned> exponents, unsigned m) : n_(std::move(exponents)), m_(m) {
    if (m_ == 0 || m_ > 32) throw PreconditionError("coefficient precision must be in 1..32");
    N_ = 1;
    for (unsigned e : n_) {
      if (e == 0) throw PreconditionError("relation exponents must be positive");
      N_ *= e;
      if (N_ > 4096) throw LimitError("truncated ring has more than 4096 monomials");
    }
    for (std::size_t i = 0; i < N_; ++i) mono_.push_back(exponents_of(i));
    prod_.assign(N_ * N_, -1);
    for (std::size_t a = 0; a < N_; ++a)
      for (std::size_t b = 0; b < N_; ++b) {
        Exponents e(n_.size());
        bool ok = true;
        for (std::size_t i = 0; i < n_.size(); ++i) {
          e[i] = mono_[a][i] + mono_[b][i];
          ok &= e[i] < n_[i];
        }
        if (ok) prod_[a * N_ + b] = static_cast<long>(index_of(e));
      }
  }

  std::size_t dimension() const { return N_; }
  unsigned precision() const { return m_; }
  const std::vector<unsigned>& exponents() const { return n_; }
  std::uint64_t modulus_mask() const { return (std::uint64_t{1} << m_) - 1; }
  const Exponents& monomial(std::size_t i) const { return mono_[i]; }

  std::size_t index_of(const Exponents& e) const {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < n_.size(); ++i) {
      idx += e[i] * stride;
      stride *= n_[i];
    }
    return idx;
  }

  Vec zero() const { return Vec(N_, 0); }
  Vec scalar(std::uint64_t c) const {
    Vec v = zero();
    v[0] = c & modulus_mask();
    return v;
  }
  /// x_i = 1 + u_i.
  Vec x(std::size_t i) const {
    Vec v = scalar(1);
    if (n_[i] > 1) {
      Exponents e(n_.size(), 0);
      e[i] = 1;
      v[index_of(e)] = 1;
    }
    return v;
  }
  Vec add(const Vec& a, const Vec& b) const {
    Vec r(N_);
    for (std::size_t i = 0; i < N_; ++i) r[i] = (a[i] + b[i]) & modulus_mask();
    return r;
  }
  Vec sub(const Vec& a, const Vec& b) const {
    Vec r(N_);
    for (std::size_t i = 0; i < N_; ++i) r[i] = (a[i] - b[i]) & modulus_mask();
    return r;
  }
  Vec scale(std::uint64_t c, const Vec& a) const {
    Vec r(N_);
    for (std::size_t i = 0; i < N_; ++i) r[i] = (c * a[i]) & modulus_mask();
    return r;
  }
  Vec mul(const Vec& a, const Vec& b) const {
    Vec r(N_, 0);
    for (std::size_t i = 0; i < N_; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < N_; ++j) {
        const long k = prod_[i * N_ + j];
        if (k >= 0 && b[j]) r[static_cast<std::size_t>(k)] += a[i] * b[j];
      }
    }
    for (auto& v : r) v &= modulus_mask();
    return r;
  }
  Vec pow(Vec a, unsigned long long k) const {
    Vec r = scalar(1);
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }

  /// Image of a rational-coefficient polynomial in x_1..x_k; denominators
  /// must be odd.
  Vec from_polynomial(const MPoly& p) const {
    if (p.nvars() > n_.size()) throw PreconditionError("polynomial has too many variables");
    Vec r = zero();
    for (const auto& [e, c] : p.terms()) {
      const OddDenomRational q(boost::multiprecision::numerator(c), boost::multiprecision::denominator(c));
      Vec t = scalar(reduce_mod(q, m_).value);
      for (std::size_t i = 0; i < e.size(); ++i) t = mul(t, pow(x(i), e[i]));
      r = add(r, t);
    }
    return r;
  }

  /// Coordinates in the x-monomial basis x^b (b_i < n_i): u^a = prod (x_i - 1)^{a_i}.
  Vec to_x_basis(const Vec& u) const {
    Vec r = zero();
    for (std::size_t a = 0; a < N_; ++a) {
      if (!u[a]) continue;
      for (std::size_t b = 0; b < N_; ++b) {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i < n_.size() && c; ++i) {
          const unsigned ai = mono_[a][i], bi = mono_[b][i];
          if (bi > ai) {
            c = 0;
            break;
          }
          c *= binomial(ai, bi);
          if ((ai - bi) % 2) c = 0 - c;
        }
        r[b] = (r[b] + c * u[a]) & modulus_mask();
      }
    }
    return r;
  }

  std::uint64_t code(const Vec& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = N_; i-- > 0;) c = (c << m_) | v[i];
    return c;
  }

 private:
  Exponents exponents_of(std::size_t idx) const {
    Exponents e(n_.size());
    for (std::size_t i = 0; i < n_.size(); ++i) {
      e[i] = static_cast<unsigned>(idx % n_[i]);
      idx /= n_[i];
    }
    return e;
  }
  std::uint64_t binomial(unsigned n, unsigned k) const {
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact for n < 64
    return r & modulus_mask();
  }

  std::vector<unsigned> n_;
  unsigned m_;
  std::size_t N_ = 1;
  std::vector<Exponents> mono_;
  std::vector<long> prod_;
};

// ------------------------------------------------------- quotient fields

/// F[x_1..x_k] / <(x_i - 1)^{n_i}, P_1, ..., P_N> over F = F0 (m = 1) or
/// F = (Z/2^m)^odd. Exponent 0 in a single-variable spec with one relation
/// P0 means F0[x]/<P0>.
struct QuotientFieldSpec {
  unsigned base_precision = 1;  // m; 1 is the prime field F0
  std::vector<unsigned> exponents;
  std::vector<std::string> relations;

  static QuotientFieldSpec f0(std::vector<unsigned> ns) { return {1, std::move(ns), {}}; }
  std::string name() const {
    std::ostringstream os;
    os << (base_precision == 1 ? "F0" : "(Z/2^" + std::to_string(base_precision) + ")^odd") << "(";
    for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
    os << ")";
    for (const auto& r : relations) os << "/<" << r << ">";
    return os.str();
  }
};

class NotCompletelyEvenError : public Error {
 public:
  NotCompletelyEvenError(const std::string& what, std::string w) : Error(what), witness(std::move(w)) {}
  std::string witness;
};

/// A materialized quotient 3-field with its polynomial coordinates.
class QuotientField {
 public:
  using Vec = TruncatedPolyRing::Vec;

  const FiniteThreeField& field() const { return *field_; }
  const QuotientFieldSpec& spec() const { return spec_; }
  const TruncatedPolyRing& ring() const { return ring_; }
  const std::vector<std::string>& variables() const { return vars_; }
  /// Normal form in the shifted basis u^a.
  const Vec& u_coordinates(Elem e) const { return uvec_[e]; }
  /// Coordinates in the basis x^b.
  const Vec& x_coordinates(Elem e) const { return xvec_[e]; }
  std::size_t size() const { return uvec_.size(); }

  Vec normal_form(Vec v) const {
    if (basis_.empty()) return v;
    std::uint64_t bits = to_bits(v);
    for (auto it = basis_.rbegin(); it != basis_.rend(); ++it)
      if ((bits >> it->first) & 1) bits ^= it->second;
    return from_bits(bits);
  }

  std::optional<Elem> index_of(const Vec& v) const {
    const auto it = index_.find(ring_.code(normal_form(v)));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// The element represented by a polynomial in the field's variables.
  Elem element(std::string_view text) const {
    const MPoly p = parse_polynomial(text, vars_);
    if (auto e = index_of(ring_.from_polynomial(p))) return *e;
    throw PreconditionError("'" + std::string(text) + "' is even; it is not an element of the 3-field");
  }

  /// The generator x_i.
  Elem generator(std::size_t i) const { return *index_of(ring_.x(i)); }

  /// f(images): substitute x_i -> images[i] in the x-expansion of f.
  Elem substitute(Elem f, const std::vector<Elem>& images) const {
    if (images.size() != vars_.size()) throw PreconditionError("one image per variable is required");
    const Vec& xs = xvec_[f];
    Vec acc = ring_.zero();
    for (std::size_t b = 0; b < ring_.dimension(); ++b) {
      if (!xs[b]) continue;
      Vec t = ring_.scalar(xs[b]);
      const auto& e = ring_.monomial(b);
      for (std::size_t i = 0; i < e.size(); ++i) t = ring_.mul(t, ring_.pow(uvec_[images[i]], e[i]));
      acc = ring_.add(acc, t);
    }
    return *index_of(acc);
  }

 private:
  friend QuotientField build_quotient_field(const QuotientFieldSpec& spec, const Limits& limits);

  QuotientField(QuotientFieldSpec spec, TruncatedPolyRing ring) : spec_(std::move(spec)), ring_(std::move(ring)) {}

  // GF(2) coordinates with bit positions in ascending graded-lex order, so
  // the leading monomial of a vector is its highest set bit
  std::uint64_t to_bits(const Vec& v) const {
    std::uint64_t b = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] & 1) b |= std::uint64_t{1} << rank_[i];
    return b;
  }
  Vec from_bits(std::uint64_t b) const {
    Vec v = ring_.zero();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (b >> rank_[i]) & 1;
    return v;
  }

  QuotientFieldSpec spec_;
  TruncatedPolyRing ring_;
  std::vector<std::string> vars_;
  std::vector<unsigned> rank_;                           // monomial index -> graded-lex rank
  std::vector<std::pair<unsigned, std::uint64_t>> basis_;  // (pivot, reduced row), ascending pivots
  std::vector<Vec> uvec_, xvec_;
  std::unordered_map<std::uint64_t, Elem> index_;
  std::optional<FiniteThreeField> field_;
};

namespace detail {

/// Monomial indices sorted by total degree, then lexicographically with the
/// first variable most significant.
inline std::vector<std::size_t> graded_lex(const TruncatedPolyRing& r) {
  std::vector<std::size_t> order(r.dimension());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = r.monomial(a);
    const auto& eb = r.monomial(b);
    const unsigned da = std::accumulate(ea.begin(), ea.end(), 0u), db = std::accumulate(eb.begin(), eb.end(), 0u);
    if (da != db) return da < db;
    return ea < eb;
  });
  return order;
}

inline std::string x_label(const TruncatedPolyRing& r, const TruncatedPolyRing::Vec& xs,
                           const std::vector<std::string>& vars, const std::vector<std::size_t>& order) {
  std::string out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::uint64_t c = xs[*it];
    if (!c) continue;
    const auto& e = r.monomial(*it);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string term;
    if (mono.empty())
      term = std::to_string(c);
    else if (c == 1)
      term = mono;
    else
      term = std::to_string(c) + "*" + mono;
    out += (out.empty() ? "" : "+") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

inline QuotientField build_quotient_field(const QuotientFieldSpec& spec_in, const Limits& limits = default_limits()) {
  QuotientFieldSpec spec = spec_in;
  if (spec.exponents.empty()) throw PreconditionError("at least one variable is required");

  // F0[x]/<P0>: decide complete evenness, then it is F0(deg P0)
  if (spec.exponents.size() == 1 && spec.exponents[0] == 0) {
    if (spec.relations.size() != 1 || spec.base_precision != 1)
      throw PreconditionError("exponent 0 requires exactly one relation over F0");
    const Gf2Poly p = parse_gf2_poly(spec.relations[0]);
    const auto ce = completely_even(p);
    if (!ce.completely_even)
      throw NotCompletelyEvenError("not completely even: " + spec.relations[0] + " has the odd factor " + *ce.witness,
                                   *ce.witness);
    spec.exponents = {static_cast<unsigned>(p.degree())};
    spec.relations.clear();
  }
  if (!spec.relations.empty() && spec.base_precision != 1)
    throw PreconditionError("extra relations are supported over F0 only");

  QuotientField q(spec, TruncatedPolyRing(spec.exponents, spec.base_precision));
  const TruncatedPolyRing& r = q.ring_;
  const std::size_t N = r.dimension();
  if (spec.base_precision * N > 63) throw LimitError("quotient ring does not fit 63-bit codes");

  if (spec.exponents.size() == 1)
    q.vars_ = {"x"};
  else
    for (std::size_t i = 0; i < spec.exponents.size(); ++i) q.vars_.push_back("x" + std::to_string(i + 1));

  const auto order = detail::graded_lex(r);
  q.rank_.assign(N, 0);
  for (unsigned k = 0; k < N; ++k) q.rank_[order[k]] = k;

  // span of u^b * P_j over GF(2), reduced echelon form on leading monomials
  std::map<unsigned, std::uint64_t> rows;
  for (const auto& text : spec.relations) {
    const auto v = r.from_polynomial(parse_polynomial(text, q.vars_));
    if (v == r.zero()) throw PreconditionError("relation " + text + " is divisible by some (x_i - 1)^{n_i}");
    if (v[0] & 1) throw NotCompletelyEvenError("relation " + text + " is odd", text);
    for (std::size_t b = 0; b < N; ++b) {
      TruncatedPolyRing::Vec mono = r.zero();
      mono[b] = 1;
      std::uint64_t bits = q.to_bits(r.mul(mono, v));
      for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        if ((bits >> it->first) & 1) bits ^= it->second;
      if (!bits) continue;
      const unsigned pivot = 63 - static_cast<unsigned>(std::countl_zero(bits));
      for (auto& [p, row] : rows)
        if ((row >> pivot) & 1) row ^= bits;
      rows[pivot] = bits;
    }
  }
  if (rows.count(0))
    throw NotCompletelyEvenError("the relations generate the unit ideal; the quotient has no odd part",
                                 spec.relations.front());
  q.basis_.assign(rows.begin(), rows.end());

  // odd part: constant u-coefficient odd, free on non-pivot monomials
  std::vector<std::size_t> free_positions;
  for (std::size_t i = 1; i < N; ++i)
    if (!rows.count(q.rank_[i])) free_positions.push_back(i);
  const unsigned m = spec.base_precision;
  const std::size_t free_bits = m * free_positions.size() + (m - 1);
  if (free_bits >= 63 || (std::size_t{1} << free_bits) > limits.max_materialize)
    throw LimitError("quotient field " + spec.name() + " has 2^" + std::to_string(free_bits) +
                     " elements, materialization cap is " + std::to_string(limits.max_materialize));
  const std::uint64_t count = std::uint64_t{1} << free_bits;
  const std::uint64_t cmask = r.modulus_mask();

  struct Entry {
    std::vector<std::uint64_t> key;
    TruncatedPolyRing::Vec u, x;
  };
  std::vector<Entry> entries;
  for (std::uint64_t k = 0; k < count; ++k) {
    TruncatedPolyRing::Vec u = r.zero();
    std::uint64_t rest = k;
    u[0] = ((rest & ((std::uint64_t{1} << (m - 1)) - 1)) << 1) | 1;
    rest >>= (m - 1);
    for (std::size_t pos : free_positions) {
      u[pos] = rest & cmask;
      rest >>= m;
    }
    Entry e{{}, u, r.to_x_basis(u)};
    unsigned degree = 0;
    for (std::size_t b = 0; b < N; ++b)
      if (e.x[b]) {
        const auto& ex = r.monomial(b);
        degree = std::max(degree, std::accumulate(ex.begin(), ex.end(), 0u));
      }
    e.key.push_back(degree);
    for (auto it = order.rbegin(); it != order.rend(); ++it) e.key.push_back(e.x[*it]);
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });

  std::vector<std::string> labels;
  for (Elem i = 0; i < entries.size(); ++i) {
    q.index_[r.code(entries[i].u)] = i;
    labels.push_back(detail::x_label(r, entries[i].x, q.vars_, order));
    q.uvec_.push_back(std::move(entries[i].u));
    q.xvec_.push_back(std::move(entries[i].x));
  }
  auto lookup = [&](const TruncatedPolyRing::Vec& v) {
    const auto it = q.index_.find(r.code(q.normal_form(v)));
    return it == q.index_.end() ? kOutside : it->second;
  };
  auto carrier = TernaryCarrier::build(
      std::move(labels),
      [&](Elem a, Elem b, Elem c) { return lookup(r.add(r.add(q.uvec_[a], q.uvec_[b]), q.uvec_[c])); },
      [&](Elem a, Elem b) { return lookup(r.mul(q.uvec_[a], q.uvec_[b])); });
  q.field_.emplace(std::move(carrier), lookup(r.scalar(1)), spec.name());
  return q;
}

/// F0(n1, ..., nk).
inline QuotientField f0(std::vector<unsigned> ns, const Limits& limits = default_limits()) {
  return build_quotient_field(QuotientFieldSpec::f0(std::move(ns)), limits);
}

/// The map f(x_1..x_k) -> f(x_1..x_k) between two quotients on the same
/// variables; a morphism when the target relations contain the source ones.
inline std::vector<Elem> reduction_map(const QuotientField& from, const QuotientField& to) {
  if (from.variables().size() != to.variables().size()) throw PreconditionError("variable counts differ");
  const auto& rf = from.ring();
  const auto& rt = to.ring();
  std::vector<Elem> map(from.size());
  for (Elem f = 0; f < from.size(); ++f) {
    const auto& xs = from.x_coordinates(f);
    auto acc = rt.zero();
    for (std::size_t b = 0; b < rf.dimension(); ++b) {
      if (!xs[b]) continue;
      auto t = rt.scalar(xs[b]);
      const auto& e = rf.monomial(b);
      for (std::size_t i = 0; i < e.size(); ++i) t = rt.mul(t, rt.pow(rt.x(i), e[i]));
      acc = rt.add(acc, t);
    }
    const auto idx = to.index_of(acc);
    if (!idx) throw Error("reduction leaves the target field");
    map[f] = *idx;
  }
  return map;
}

/// |F| without materializing: 2^(m N - 1 - rank of the extra relations).
inline BigInt cardinality(const QuotientFieldSpec& spec) {
  QuotientFieldSpec s = spec;
  if (s.exponents.size() == 1 && s.exponents[0] == 0) {
    const Gf2Poly p = parse_gf2_poly(s.relations.at(0));
    const auto ce = completely_even(p);
    if (!ce.completely_even) throw NotCompletelyEvenError("not completely even", *ce.witness);
    return BigInt(1) << (p.degree() - 1);
  }
  std::size_t monomials = 1;
  for (unsigned e : s.exponents) monomials *= e;
  std::size_t rank = 0;
  if (!s.relations.empty()) {
    const TruncatedPolyRing r(s.exponents, 1);
    const std::size_t N = r.dimension();
    if (N > 64) throw LimitError("relation rank needs at most 64 monomials");
    std::vector<std::string> vars;
    if (s.exponents.size() == 1)
      vars = {"x"};
    else
      for (std::size_t i = 0; i < s.exponents.size(); ++i) vars.push_back("x" + std::to_string(i + 1));
    // xor basis with distinct leading bits, kept in descending order
    std::vector<std::uint64_t> rows;
    for (const auto& text : s.relations) {
      const auto v = r.from_polynomial(parse_polynomial(text, vars));
      for (std::size_t b = 0; b < N; ++b) {
        TruncatedPolyRing::Vec mono = r.zero();
        mono[b] = 1;
        const auto w = r.mul(mono, v);
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < N; ++i)
          if (w[i] & 1) bits |= std::uint64_t{1} << i;
        for (std::uint64_t row : rows) bits = std::min(bits, bits ^ row);
        if (bits) {
          rows.push_back(bits);
          std::sort(rows.rbegin(), rows.rend());
        }
      }
    }
    rank = rows.size();
  }
  return BigInt(1) << (monomials * s.base_precision - 1 - rank);
}

// --------------------------------------------------------------- products

/// Cartesian product with componentwise operations; labels "(a,b,...)".
inline FiniteThreeField product_field(const std::vector<const FiniteThreeField*>& factors,
                                      const Limits& limits = default_limits()) {
  if (factors.empty()) throw PreconditionError("empty product");
  std::size_t total = 1;
  for (const auto* f : factors) {
    total *= f->size();
    if (total > limits.max_materialize) throw LimitError("product exceeds the materialization cap");
  }
  auto digits = [&](Elem e) {
    std::vector<Elem> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = static_cast<Elem>(e % factors[i]->size());
      e /= static_cast<Elem>(factors[i]->size());
    }
    return d;
  };
  auto compose = [&](const std::vector<Elem>& d) {
    Elem e = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) e = static_cast<Elem>(e * factors[i]->size() + d[i]);
    return e;
  };
  std::vector<std::string> labels;
  std::string origin;
  for (Elem e = 0; e < total; ++e) {
    const auto d = digits(e);
    std::string l = "(";
    for (std::size_t i = 0; i < d.size(); ++i) l += (i ? "," : "") + factors[i]->label(d[i]);
    labels.push_back(l + ")");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) origin += (i ? " x " : "") + factors[i]->origin();
  std::vector<Elem> ones;
  for (const auto* f : factors) ones.push_back(f->one());
  auto carrier = TernaryCarrier::build(
      std::move(labels),
      [&](Elem a, Elem b, Elem c) {
        const auto da = digits(a), db = digits(b), dc = digits(c);
        std::vector<Elem> r(factors.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = factors[i]->nu(da[i], db[i], dc[i]);
        return compose(r);
      },
      [&](Elem a, Elem b) {
        const auto da = digits(a), db = digits(b);
        std::vector<Elem> r(factors.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = factors[i]->mul(da[i], db[i]);
        return compose(r);
      });
  return FiniteThreeField(std::move(carrier), compose(ones), origin);
}

struct ProductPresentation {
  std::vector<Elem> generators;          // x_i = (1, ..., g_i, ..., 1)
  std::vector<unsigned> nilpotency;      // least k with (x_i - 1)^k = 0 in U
  bool cross_relations_hold = true;      // (x_i - 1)(x_j - 1) = 0 for i < j
  bool generates = true;                 // the x_i generate the product
  std::vector<std::string> relations;    // human-readable relation list
  std::size_t free_size = 0;             // |F0(n_1, ..., n_k)|
  bool isomorphic_to_free = false;
};

/// Generators and defining relations of a product of singly generated
/// fields, with the comparison against the free field on the same
/// nilpotency exponents.
inline ProductPresentation product_presentation(const std::vector<const FiniteThreeField*>& factors,
                                                const FiniteThreeField& product,
                                                const Limits& limits = default_limits()) {
  ProductPresentation pres;
  const EnvelopeRing u = build_envelope(product, limits);
  const FiniteRing& r = u.ring();
  std::size_t stride = product.size();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto gens = detail::generators(detail::signature_of(*factors[i]));
    if (gens.size() > 1) throw PreconditionError("factor " + factors[i]->origin() + " is not singly generated");
    stride /= factors[i]->size();
    Elem x = product.one();
    // replace digit i of the unit by the factor's generator
    const Elem g = gens.empty() ? factors[i]->one() : gens[0];
    x = static_cast<Elem>(x + (static_cast<long long>(g) - static_cast<long long>(factors[i]->one())) *
                                  static_cast<long long>(stride));
    pres.generators.push_back(x);
  }
  std::vector<Elem> shifted;
  for (std::size_t i = 0; i < pres.generators.size(); ++i) {
    const Elem xi = pres.generators[i];
    const std::string name = "x" + std::to_string(i + 1);
    const Elem s = r.sub(u.odd(xi), r.one());
    shifted.push_back(s);
    unsigned k = 1;
    Elem p = s;
    while (p != r.zero() && k <= r.size()) {
      p = r.mul(p, s);
      ++k;
    }
    pres.nilpotency.push_back(k);
    if (k == 2 && r.mul(u.odd(xi), u.odd(xi)) == r.one())
      pres.relations.push_back(name + "^2 = 1");
    else
      pres.relations.push_back("(" + name + " - 1)^" + std::to_string(k) + " = 0");
  }
  for (std::size_t i = 0; i < shifted.size(); ++i)
    for (std::size_t j = i + 1; j < shifted.size(); ++j) {
      const bool holds = r.mul(shifted[i], shifted[j]) == r.zero();
      pres.cross_relations_hold &= holds;
      const std::string a = "x" + std::to_string(i + 1), b = "x" + std::to_string(j + 1);
      const Elem lhs = r.mul(u.odd(pres.generators[i]), u.odd(pres.generators[j]));
      const Elem rhs = r.sub(r.add(u.odd(pres.generators[i]), u.odd(pres.generators[j])), r.one());
      if (lhs == rhs && holds) pres.relations.push_back(a + b + " = " + a + " + " + b + " - 1");
    }
  pres.generates = generated_subfield(product, pres.generators).count() == product.size();
  std::size_t monomials = 1;
  for (unsigned k : pres.nilpotency) monomials *= k;
  pres.free_size = monomials >= 64 ? 0 : std::size_t{1} << (monomials - 1);
  if (pres.free_size == product.size()) {
    const QuotientField free = f0(pres.nilpotency, limits);
    pres.isomorphic_to_free = find_isomorphism(product, free.field()).has_value();
  }
  return pres;
}

// ------------------------------------------------------------ prime field

struct PrimeSubfield {
  ElemSet members;
  std::size_t characteristic = 0;
  unsigned zodd_exponent = 0;         // F^prim = (Z/2^n)^odd with this n
  std::vector<Elem> isomorphism;      // zodd(n) index -> element of F
};

inline PrimeSubfield prime_subfield(const FiniteThreeField& f, const Limits& limits = default_limits()) {
  PrimeSubfield p;
  p.members = generated_subfield(f, {});
  p.characteristic = p.members.count();
  unsigned n = 1;
  while ((std::size_t{1} << (n - 1)) < p.characteristic) ++n;
  if ((std::size_t{1} << (n - 1)) != p.characteristic) throw Error("prime subfield size is not a power of two");
  p.zodd_exponent = n;
  const auto [sub, inclusion] = induced_subfield(f, p.members, "prime subfield");
  const FiniteThreeField model = zodd(n, limits);
  const auto iso = find_isomorphism(model, sub);
  if (!iso) throw Error("prime subfield is not isomorphic to (Z/2^n)^odd");
  for (Elem e : *iso) p.isomorphism.push_back(inclusion[e]);
  return p;
}

// ---------------------------------------------------------- substitution

namespace detail {
inline Elem ring_inverse(const FiniteRing& r, Elem a) {
  for (Elem b = 0; b < r.size(); ++b)
    if (r.mul(a, b) == r.one()) return b;
  throw PreconditionError("element " + r.label(a) + " is not invertible");
}
inline Elem ring_pow(const FiniteRing& r, Elem a, unsigned long long k) {
  Elem acc = r.one();
  while (k) {
    if (k & 1) acc = r.mul(acc, a);
    a = r.mul(a, a);
    k >>= 1;
  }
  return acc;
}
}  // namespace detail

/// P(a_1, ..., a_n) computed in U(A); P must be odd so the value lies in A.
inline Elem eval_hom(const EnvelopeRing& ua, const MPoly& p, const std::vector<Elem>& targets) {
  if (parity(p) != Parity::Odd) throw PreconditionError("polynomial is even; its value is not in the 3-field");
  if (targets.size() < p.nvars()) throw PreconditionError("one target per variable is required");
  const FiniteRing& r = ua.ring();
  Elem acc = r.zero();
  for (const auto& [e, c] : p.terms()) {
    const BigInt num = boost::multiprecision::numerator(c), den = boost::multiprecision::denominator(c);
    const Elem cn = r.integer(static_cast<long long>(num % BigInt(1LL << 40)));
    const Elem cd = detail::ring_inverse(r, r.integer(static_cast<long long>(den % BigInt(1LL << 40))));
    Elem t = r.mul(cn, cd);
    for (std::size_t i = 0; i < e.size(); ++i) t = r.mul(t, detail::ring_pow(r, ua.odd(targets[i]), e[i]));
    acc = r.add(acc, t);
  }
  if (!ua.is_odd(acc)) throw Error("value of an odd polynomial is even");
  return acc;
}

/// Values of all odd polynomials at the targets: integer combinations of
/// monomials a^k (k_i below the multiplicative order) with coefficient sum
/// odd, accumulated as a subset of U(A) and intersected with A.
inline ElemSet eval_image(const EnvelopeRing& ua, const std::vector<Elem>& targets, std::size_t max_monomials = 4096) {
  const FiniteRing& r = ua.ring();
  std::vector<Elem> monomials{r.one()};
  for (Elem a : targets) {
    const Elem ea = ua.odd(a);
    std::vector<Elem> powers{r.one()};
    for (Elem p = ea; p != r.one(); p = r.mul(p, ea)) powers.push_back(p);
    std::vector<Elem> next;
    for (Elem m : monomials)
      for (Elem p : powers) next.push_back(r.mul(m, p));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > max_monomials) throw LimitError("too many monomials in image enumeration");
    monomials = std::move(next);
  }
  ElemSet reach(r.size());
  reach.insert(r.zero());
  for (Elem m : monomials) {
    ElemSet next = reach;
    for (Elem s : reach.elements()) {
      Elem t = s;
      do {
        t = r.add(t, m);
        next.insert(t);
      } while (t != s);
    }
    reach = std::move(next);
  }
  ElemSet image(ua.base().size());
  for (Elem e : reach.elements())
    if (ua.is_odd(e)) image.insert(e);
  return image;
}

}  // namespace trifield
