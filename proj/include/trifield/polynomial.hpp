#pragma once

// Polynomials: GF(2)[x] as bitmasks, dense univariate polynomials over exact
// coefficient types, sparse multivariate polynomials with an expression
// parser, and a Kronecker divisor search over Z[x].

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "trifield/core.hpp"
#include "trifield/dyadic.hpp"

namespace trifield {

using BigRational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------- GF(2)[x]

/// Polynomial over Z/2Z; bit i is the coefficient of x^i. Degree <= 63.
struct Gf2Poly {
  std::uint64_t bits = 0;

  static Gf2Poly x_plus_1() { return {0b11}; }
  bool is_zero() const { return bits == 0; }
  int degree() const { return bits ? 63 - std::countl_zero(bits) : -1; }
  /// Value at x = 1.
  bool at_one() const { return std::popcount(bits) & 1; }

  friend Gf2Poly operator+(Gf2Poly a, Gf2Poly b) { return {a.bits ^ b.bits}; }
  friend Gf2Poly operator*(Gf2Poly a, Gf2Poly b) {
    if (a.bits && b.bits && a.degree() + b.degree() > 63) throw LimitError("GF(2) product exceeds degree 63");
    std::uint64_t r = 0;
    for (std::uint64_t m = b.bits; m; m &= m - 1) r ^= a.bits << std::countr_zero(m);
    return {r};
  }
  friend bool operator==(Gf2Poly, Gf2Poly) = default;
  friend auto operator<=>(Gf2Poly a, Gf2Poly b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    return a.bits <=> b.bits;
  }

  /// Quotient and remainder.
  std::pair<Gf2Poly, Gf2Poly> divmod(Gf2Poly d) const {
    if (d.is_zero()) throw PreconditionError("division by the zero polynomial");
    std::uint64_t q = 0, r = bits;
    const int dd = d.degree();
    while (r && 63 - std::countl_zero(r) >= dd) {
      const int s = 63 - std::countl_zero(r) - dd;
      q |= std::uint64_t{1} << s;
      r ^= d.bits << s;
    }
    return {{q}, {r}};
  }

  std::string str(std::string_view var = "x") const {
    if (!bits) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      if (!((bits >> i) & 1)) continue;
      if (!out.empty()) out += "+";
      if (i == 0)
        out += "1";
      else if (i == 1)
        out += var;
      else
        out += std::string(var) + "^" + std::to_string(i);
    }
    return out;
  }
};

// ------------------------------------------------------- dense univariate

/// Coefficients low to high, no trailing zeros.
template <class T>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static UPoly constant(T v) { return UPoly(std::vector<T>{std::move(v)}); }
  static UPoly x_minus(T a) { return UPoly(std::vector<T>{T(-a), T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& lead() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  T sum() const {
    T acc(0);
    for (const auto& v : c_) acc = acc + v;
    return acc;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Division by x - a: quotient and remainder (= value at a).
  std::pair<UPoly, T> synthetic_division(const T& a) const {
    if (c_.empty()) return {UPoly{}, T(0)};
    std::vector<T> q(c_.size() - 1, T(0));
    T carry(0);
    for (std::size_t k = c_.size(); k-- > 0;) {
      const T v = c_[k] + carry * a;
      if (k == 0) return {UPoly(std::move(q)), v};
      q[k - 1] = v;
      carry = v;
    }
    return {UPoly(std::move(q)), T(0)};
  }

  std::string str(std::string_view var = "x") const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      T v = c_[static_cast<std::size_t>(i)];
      if (v == T(0)) continue;
      const bool neg = v < T(0);
      if (neg) v = -v;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      if (i == 0 || !(v == T(1))) {
        os << v;
        if (i > 0) os << "*";
      }
      if (i == 1) os << var;
      if (i > 1) os << var << "^" << i;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = UPoly<BigInt>;
using RatPoly = UPoly<BigRational>;

/// Exact division over Z; nullopt when d does not divide p in Z[x].
inline std::optional<IntPoly> exact_divide(const IntPoly& p, const IntPoly& d) {
  if (d.is_zero()) throw PreconditionError("division by the zero polynomial");
  if (p.degree() < d.degree()) return p.is_zero() ? std::optional<IntPoly>(IntPoly{}) : std::nullopt;
  std::vector<BigInt> r = p.coeffs();
  std::vector<BigInt> q(static_cast<std::size_t>(p.degree() - d.degree() + 1));
  const auto& dc = d.coeffs();
  for (int k = p.degree() - d.degree(); k >= 0; --k) {
    const BigInt& top = r[static_cast<std::size_t>(k + d.degree())];
    if (top % d.lead() != 0) return std::nullopt;
    const BigInt f = top / d.lead();
    q[static_cast<std::size_t>(k)] = f;
    for (std::size_t j = 0; j < dc.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * dc[j];
  }
  for (const auto& v : r)
    if (v != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

inline BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& v : p.coeffs()) g = gcd(g, v < 0 ? BigInt(-v) : v);
  return g;
}

/// Primitive part with positive leading coefficient.
inline IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (p.lead() < 0) g = -g;
  std::vector<BigInt> c;
  for (const auto& v : p.coeffs()) c.push_back(v / g);
  return IntPoly(std::move(c));
}

inline Gf2Poly to_gf2(const IntPoly& p) {
  if (p.degree() > 63) throw LimitError("degree exceeds 63 for GF(2) bitmask polynomials");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    if (p.coeffs()[i] % 2 != 0) bits |= std::uint64_t{1} << i;
  return {bits};
}

/// Exponent r with |x|_2 = 2^-r for a nonzero rational; negative when the
/// denominator carries powers of two.
inline long long val2(const BigRational& x) {
  if (x == 0) throw PreconditionError("val2 of zero is infinite");
  const BigInt n = boost::multiprecision::numerator(x), d = boost::multiprecision::denominator(x);
  return static_cast<long long>(boost::multiprecision::lsb(n < 0 ? BigInt(-n) : n)) -
         static_cast<long long>(boost::multiprecision::lsb(d));
}

inline std::string format_abs2_signed(long long r) { return "2^" + std::to_string(-r); }

// ----------------------------------------------------------- multivariate

using Exponents = std::vector<unsigned>;

/// Sparse polynomial with rational coefficients in named variables.
class MPoly {
 public:
  MPoly() = default;
  MPoly(std::vector<std::string> vars, std::map<Exponents, BigRational> terms) : vars_(std::move(vars)) {
    for (auto& [e, c] : terms)
      if (c != 0) terms_.emplace(e, c);
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, BigRational>& terms() const { return terms_; }
  std::size_t nvars() const { return vars_.size(); }
  bool is_zero() const { return terms_.empty(); }

  BigRational coefficient_sum() const {
    BigRational s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }
  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned t = 0;
      for (unsigned v : e) t += v;
      d = std::max(d, t);
    }
    return d;
  }
  bool integral() const {
    for (const auto& [e, c] : terms_)
      if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
  }

  /// Univariate view; requires at most one variable.
  RatPoly univariate() const {
    if (vars_.size() > 1) throw PreconditionError("polynomial has more than one variable");
    std::vector<BigRational> c;
    for (const auto& [e, v] : terms_) {
      const unsigned k = e.empty() ? 0 : e[0];
      if (c.size() <= k) c.resize(k + 1, BigRational(0));
      c[k] += v;
    }
    return RatPoly(std::move(c));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      BigRational c = it->second;
      const bool neg = c < 0;
      if (neg) c = -c;
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
      first = false;
      bool constant = true;
      for (unsigned v : it->first) constant &= v == 0;
      bool need_star = false;
      if (constant || c != 1) {
        os << c;
        need_star = true;
      }
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        if (it->first[i] == 0) continue;
        os << (need_star ? "*" : "") << vars_[i];
        if (it->first[i] > 1) os << "^" << it->first[i];
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  std::vector<std::string> vars_;
  std::map<Exponents, BigRational> terms_;
};

namespace detail {

/// Variable names sorted naturally: x, x1, x2, ..., x10, then others.
inline bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    return std::pair<std::string, long long>(s.substr(0, i), i < s.size() ? std::stoll(s.substr(i)) : -1);
  };
  return split(a) < split(b);
}

class PolyParser {
 public:
  using Terms = std::map<std::map<std::string, unsigned>, BigRational>;

  explicit PolyParser(std::string_view text) : s_(text) {}

  Terms parse() {
    Terms t = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("polynomial syntax at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Terms add(Terms a, const Terms& b, int sign) {
    for (const auto& [m, c] : b) {
      a[m] += sign * c;
      if (a[m] == 0) a.erase(m);
    }
    return a;
  }
  static Terms mul(const Terms& a, const Terms& b) {
    Terms r;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        auto m = ma;
        for (const auto& [v, e] : mb) m[v] += e;
        r[m] += ca * cb;
        if (r[m] == 0) r.erase(m);
      }
    return r;
  }

  Terms expr() {
    Terms acc;
    int sign = 1;
    if (eat('-'))
      sign = -1;
    else
      eat('+');
    acc = add(acc, term(), sign);
    for (;;) {
      if (eat('+'))
        acc = add(acc, term(), 1);
      else if (eat('-'))
        acc = add(acc, term(), -1);
      else
        return acc;
    }
  }
  Terms term() {
    Terms acc = power();
    for (;;) {
      if (eat('*')) {
        acc = mul(acc, power());
        continue;
      }
      // implicit product: "2x", "x(x+1)"
      skip();
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        acc = mul(acc, power());
        continue;
      }
      return acc;
    }
  }
  Terms power() {
    Terms base = atom();
    if (eat('^')) {
      skip();
      const unsigned e = static_cast<unsigned>(number_literal().convert_to<unsigned long>());
      if (e > 64) fail("exponent too large");
      Terms r{{{}, BigRational(1)}};
      for (unsigned i = 0; i < e; ++i) r = mul(r, base);
      return r;
    }
    return base;
  }
  BigInt number_literal() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }
  Terms atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Terms t = expr();
      if (!eat(')')) fail("expected ')'");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigRational v(number_literal());
      skip();
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        const BigInt d = number_literal();
        if (d == 0) fail("zero denominator");
        v /= BigRational(d);
      }
      if (v == 0) return {};
      return {{{}, v}};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return {{{{std::string(s_.substr(start, pos_ - start)), 1u}}, BigRational(1)}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "x1^2*x2 - 3*x1 + 1", "x^6-1", "(x-1)^3", "2/3 x + 1".
/// Variables are ordered naturally unless `vars` fixes the order.
inline MPoly parse_polynomial(std::string_view text, std::vector<std::string> vars = {}) {
  const auto raw = detail::PolyParser(text).parse();
  std::vector<std::string> found;
  for (const auto& [m, c] : raw)
    for (const auto& [v, e] : m)
      if (e > 0 && std::find(found.begin(), found.end(), v) == found.end()) found.push_back(v);
  if (vars.empty()) {
    vars = found;
    std::sort(vars.begin(), vars.end(), detail::natural_less);
  } else {
    for (const auto& v : found)
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        throw PreconditionError("unknown variable '" + v + "'");
  }
  std::map<Exponents, BigRational> terms;
  for (const auto& [m, c] : raw) {
    Exponents e(vars.size(), 0);
    for (const auto& [v, k] : m) e[static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin())] += k;
    terms[e] += c;
  }
  return MPoly(std::move(vars), std::move(terms));
}

/// Univariate integer polynomial from text; rejects non-integral input.
inline IntPoly parse_int_poly(std::string_view text) {
  const MPoly m = parse_polynomial(text);
  if (!m.integral()) throw PreconditionError("polynomial has non-integer coefficients");
  const RatPoly r = m.univariate();
  std::vector<BigInt> c;
  for (const auto& v : r.coeffs()) c.push_back(boost::multiprecision::numerator(v));
  return IntPoly(std::move(c));
}

/// Univariate polynomial over U(Q^odd) from text; denominators must be odd.
inline UPoly<OddDenomRational> parse_odd_denom_poly(std::string_view text) {
  const RatPoly r = parse_polynomial(text).univariate();
  std::vector<OddDenomRational> c;
  for (const auto& v : r.coeffs())
    c.emplace_back(boost::multiprecision::numerator(v), boost::multiprecision::denominator(v));
  return UPoly<OddDenomRational>(std::move(c));
}

inline Gf2Poly parse_gf2_poly(std::string_view text) {
  const RatPoly r = parse_polynomial(text).univariate();
  std::vector<BigInt> c;
  for (const auto& v : r.coeffs()) {
    if (boost::multiprecision::denominator(v) % 2 == 0) throw PreconditionError("even denominator has no image mod 2");
    c.push_back(boost::multiprecision::numerator(v));
  }
  return to_gf2(IntPoly(std::move(c)));
}

// --------------------------------------------------------------- Kronecker

namespace detail {

/// Positive divisors of |v|, v != 0, by trial division.
inline std::vector<BigInt> positive_divisors(BigInt v) {
  if (v < 0) v = -v;
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= v; ++d)
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Every primitive divisor of `p` (positive leading coefficient) of degree
/// in [1, max_degree], found by Kronecker's method. `p` must have degree at
/// most `cap`.
inline std::vector<IntPoly> kronecker_divisors(const IntPoly& p, int max_degree, int cap) {
  if (p.is_zero()) throw PreconditionError("zero polynomial has no finite divisor set");
  if (p.degree() > cap)
    throw LimitError("degree " + std::to_string(p.degree()) + " exceeds the Kronecker cap " + std::to_string(cap));
  const IntPoly q = primitive_part(p);
  std::vector<IntPoly> found;
  auto record = [&](IntPoly d) {
    d = primitive_part(d);
    if (d.degree() < 1 || d.degree() > max_degree) return;
    if (std::find(found.begin(), found.end(), d) != found.end()) return;
    if (exact_divide(q, d)) found.push_back(std::move(d));
  };

  // integer roots give linear divisors directly and are avoided as nodes
  std::vector<BigInt> nodes, values;
  for (long long k = 0; static_cast<int>(nodes.size()) <= max_degree; k = k > 0 ? -k : -k + 1) {
    const BigInt x(k);
    const BigInt v = q(x);
    if (v == 0) {
      record(IntPoly::x_minus(x));
      continue;
    }
    nodes.push_back(x);
    values.push_back(v);
  }

  for (int deg = 1; deg <= max_degree; ++deg) {
    const std::size_t m = static_cast<std::size_t>(deg) + 1;
    std::vector<std::vector<BigInt>> choices(m);
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& d : detail::positive_divisors(values[i])) {
        choices[i].push_back(d);
        if (i > 0) choices[i].push_back(-d);  // first value positive: divisors up to sign
      }
    // diag[i][l]: divided difference of order l ending at node i
    std::vector<std::vector<BigInt>> diag(m);
    auto dfs = [&](auto&& self, std::size_t i) -> void {
      if (i == m) {
        if (diag[m - 1][m - 1] == 0 || q.lead() % diag[m - 1][m - 1] != 0) return;
        IntPoly d, basis = IntPoly::constant(1);
        for (std::size_t k = 0; k < m; ++k) {
          d = d + basis * IntPoly::constant(diag[k][k]);
          basis = basis * IntPoly::x_minus(nodes[k]);
        }
        record(std::move(d));
        return;
      }
      for (const auto& y : choices[i]) {
        auto& row = diag[i];
        row.assign(i + 1, BigInt(0));
        row[0] = y;
        bool integral = true;
        for (std::size_t l = 1; l <= i && integral; ++l) {
          const BigInt num = row[l - 1] - diag[i - 1][l - 1];
          const BigInt den = nodes[i] - nodes[i - l];
          if (num % den != 0)
            integral = false;
          else
            row[l] = num / den;
        }
        if (integral) self(self, i + 1);
      }
    };
    dfs(dfs, 0);
  }
  std::sort(found.begin(), found.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  return found;
}

}  // namespace trifield
