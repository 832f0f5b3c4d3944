#pragma once

// Exact arithmetic in U(Q^odd) = { p/q : q odd }, the 2-adic valuation, the
// ideals J_n = <2^n>, and truncated residues mod 2^N approximating Q_2^odd.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "trifield/carrier.hpp"
#include "trifield/core.hpp"
#include "trifield/iso.hpp"
#include "trifield/ring.hpp"

namespace trifield {

using BigInt = boost::multiprecision::cpp_int;

/// A reduced fraction with positive odd denominator. Odd numerator: element
/// of Q^odd; even numerator: element of Q^even = Q(Q^odd).
class OddDenomRational {
 public:
  OddDenomRational() : num_(0), den_(1) {}
  OddDenomRational(BigInt num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  OddDenomRational(long long num) : num_(num), den_(1) {}          // NOLINT(google-explicit-constructor)
  OddDenomRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw PreconditionError("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (den_ % 2 == 0) throw PreconditionError("denominator is even after reduction; not in U(Q^odd)");
  }

  /// "p/q" or "p".
  static OddDenomRational parse(std::string_view text) {
    auto to_int = [](std::string_view s) {
      while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
      while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
      if (s.empty()) throw PreconditionError("empty number");
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) throw PreconditionError("malformed number '" + std::string(s) + "'");
      for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw PreconditionError("malformed number '" + std::string(s) + "'");
      BigInt v(std::string(s.substr(i)));
      return s[0] == '-' ? BigInt(-v) : v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return {to_int(text), BigInt(1)};
    return {to_int(text.substr(0, slash)), to_int(text.substr(slash + 1))};
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  /// Member of Q^odd.
  bool is_odd() const { return num_ % 2 != 0; }

  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  friend OddDenomRational operator+(const OddDenomRational& a, const OddDenomRational& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend OddDenomRational operator-(const OddDenomRational& a, const OddDenomRational& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend OddDenomRational operator*(const OddDenomRational& a, const OddDenomRational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  OddDenomRational operator-() const { return {-num_, den_}; }
  friend bool operator==(const OddDenomRational& a, const OddDenomRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  BigInt num_, den_;
};

/// Exponent r with |x|_2 = 2^-r for a nonzero integer.
inline unsigned val2(const BigInt& x) {
  if (x == 0) throw PreconditionError("val2 of zero is infinite");
  return static_cast<unsigned>(boost::multiprecision::lsb(x < 0 ? BigInt(-x) : x));
}

/// Exponent r with |p/q|_2 = 2^-r; the denominator is odd so only p counts.
inline unsigned val2(const OddDenomRational& r) { return val2(r.num()); }

inline std::string format_abs2(unsigned r) { return "2^-" + std::to_string(r); }

inline OddDenomRational add3(const OddDenomRational& a, const OddDenomRational& b, const OddDenomRational& c) {
  return a + b + c;
}

inline OddDenomRational mul(const OddDenomRational& a, const OddDenomRational& b) { return a * b; }

inline OddDenomRational inverse(const OddDenomRational& a) {
  if (!a.is_odd()) throw PreconditionError("not in Q^odd: " + a.str() + " has an even numerator");
  return {a.den(), a.num()};
}

/// A residue mod 2^N, 1 <= N <= 63.
struct TruncatedDyadic {
  unsigned precision = 16;
  std::uint64_t value = 0;

  static std::uint64_t mask(unsigned n) { return (std::uint64_t{1} << n) - 1; }
  static TruncatedDyadic make(unsigned n, std::uint64_t v) {
    if (n == 0 || n > 63) throw PreconditionError("precision must be in 1..63");
    return {n, v & mask(n)};
  }
  bool is_odd() const { return value & 1; }
  /// "v mod 2^N".
  std::string str() const { return std::to_string(value) + " mod 2^" + std::to_string(precision); }
  static TruncatedDyadic parse(std::string_view text) {
    const auto pos = text.find(" mod 2^");
    if (pos == std::string_view::npos) throw PreconditionError("expected 'v mod 2^N'");
    try {
      return make(static_cast<unsigned>(std::stoul(std::string(text.substr(pos + 7)))),
                  std::stoull(std::string(text.substr(0, pos))));
    } catch (const std::logic_error&) {
      throw PreconditionError("malformed truncated dyadic '" + std::string(text) + "'");
    }
  }
  friend bool operator==(const TruncatedDyadic&, const TruncatedDyadic&) = default;
};

namespace detail {
inline void same_precision(std::initializer_list<TruncatedDyadic> xs) {
  const unsigned n = xs.begin()->precision;
  for (const auto& x : xs)
    if (x.precision != n) throw PreconditionError("precision mismatch");
}

/// x^-1 mod 2^64 for odd x by Newton iteration.
inline std::uint64_t inverse_mod_2_64(std::uint64_t x) {
  std::uint64_t y = x;  // correct to 3 bits
  for (int i = 0; i < 5; ++i) y *= 2 - x * y;
  return y;
}
}  // namespace detail

inline TruncatedDyadic add3(const TruncatedDyadic& a, const TruncatedDyadic& b, const TruncatedDyadic& c) {
  detail::same_precision({a, b, c});
  return TruncatedDyadic::make(a.precision, a.value + b.value + c.value);
}

inline TruncatedDyadic mul(const TruncatedDyadic& a, const TruncatedDyadic& b) {
  detail::same_precision({a, b});
  return TruncatedDyadic::make(a.precision, a.value * b.value);
}

inline TruncatedDyadic inverse(const TruncatedDyadic& a) {
  if (!a.is_odd()) throw PreconditionError("inverse of an even residue: " + a.str());
  return TruncatedDyadic::make(a.precision, detail::inverse_mod_2_64(a.value));
}

/// The projection Z/2^N -> Z/2^m for m <= N.
inline TruncatedDyadic reduce_to(const TruncatedDyadic& a, unsigned m) {
  if (m > a.precision) throw PreconditionError("cannot raise precision");
  return TruncatedDyadic::make(m, a.value);
}

/// p q^-1 mod 2^n.
inline TruncatedDyadic reduce_mod(const OddDenomRational& r, unsigned n) {
  if (n == 0 || n > 63) throw PreconditionError("precision must be in 1..63");
  const BigInt modulus = BigInt(1) << n;
  BigInt p = r.num() % modulus;
  if (p < 0) p += modulus;
  const BigInt q = r.den() % modulus;
  const auto pv = p.convert_to<std::uint64_t>();
  const auto qinv = detail::inverse_mod_2_64(q.convert_to<std::uint64_t>());
  return TruncatedDyadic::make(n, pv * qinv);
}

/// r in J_n = <2^n> of U(Q^odd), i.e. |r|_2 <= 2^-n.
inline bool jn_membership(const OddDenomRational& r, unsigned n) { return r.is_zero() || val2(r) >= n; }

/// Uniform-ish random element of U(Q^odd) with |num| and den bounded; `odd`
/// selects Q^odd, Q^even, or either.
inline OddDenomRational random_odd_denom(std::mt19937_64& rng, long long bound, std::optional<bool> odd = {}) {
  std::uniform_int_distribution<long long> num_dist(-bound, bound), den_dist(0, bound / 2);
  for (;;) {
    long long p = num_dist(rng);
    const long long q = 2 * den_dist(rng) + 1;
    if (odd) {
      if (*odd && p % 2 == 0) p += 1;
      if (!*odd && p % 2 != 0) p += 1;
    }
    if (!odd.value_or(true) || p != 0) return {BigInt(p), BigInt(q)};
  }
}

struct QoddQuotientReport {
  FiniteThreeField field;              // (Z/2^n)^odd, labels = residues
  std::size_t samples = 0;
  bool class_map_is_morphism = true;   // reduce_mod respects add3, mul on every sampled triple
  bool classes_match_jn = true;        // r1 ~ r2 iff r1 - r2 in J_n on every sampled pair
  bool surjective = true;              // every residue class is hit
};

/// Q^odd / J_n computed through reduce_mod and checked on sampled elements.
inline QoddQuotientReport qodd_quotient_by_jn(unsigned n, std::size_t samples = 2000, std::uint64_t seed = 1,
                                              const Limits& limits = default_limits()) {
  QoddQuotientReport rep{zodd(n, limits)};
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  auto index_of = [&](const TruncatedDyadic& t) { return static_cast<Elem>(t.value / 2); };
  ElemSet hit(rep.field.size());
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = random_odd_denom(rng, 1000, true), b = random_odd_denom(rng, 1000, true),
               c = random_odd_denom(rng, 1000, true);
    const auto ra = reduce_mod(a, n), rb = reduce_mod(b, n), rc = reduce_mod(c, n);
    hit.insert(index_of(ra));
    const Elem ia = index_of(ra), ib = index_of(rb), ic = index_of(rc);
    if (index_of(reduce_mod(add3(a, b, c), n)) != rep.field.nu(ia, ib, ic)) rep.class_map_is_morphism = false;
    if (index_of(reduce_mod(a * b, n)) != rep.field.mul(ia, ib)) rep.class_map_is_morphism = false;
    if ((ra == rb) != jn_membership(a - b, n)) rep.classes_match_jn = false;
  }
  // every odd residue v is the image of v itself
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); v += 2)
    if (!(reduce_mod(OddDenomRational(static_cast<long long>(v)), n).value == v)) rep.surjective = false;
  return rep;
}

struct QoddEmbeddingReport {
  bool embeds = true;
  std::optional<std::pair<OddDenomRational, OddDenomRational>> witness;
  std::size_t pairs_scanned = 0;
};

/// x + y - xy = 1 scanned over Q^odd elements with |num|, den <= bound.
/// The identity factors as (1-x)(1-y) = 0 in the domain U(Q^odd), so no
/// witness exists; the scan confirms it on the sampled box.
inline QoddEmbeddingReport qodd_embedding_scan(long long bound) {
  std::vector<OddDenomRational> pts;
  for (long long q = 1; q <= bound; q += 2)
    for (long long p = -bound; p <= bound; p += 2)
      if (p % 2 != 0) {
        OddDenomRational r{BigInt(p), BigInt(q)};
        if (r.den() == q) pts.push_back(r);
      }
  QoddEmbeddingReport rep;
  const OddDenomRational one(1);
  for (const auto& y : pts) {
    if (y == one) continue;
    for (const auto& x : pts) {
      ++rep.pairs_scanned;
      if (x != one && x + y - x * y == one) {
        rep.embeds = false;
        rep.witness = {x, y};
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace trifield
