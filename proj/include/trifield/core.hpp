#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace trifield {

/// Index of an element inside one carrier. Indices from different carriers
/// are unrelated; compare across carriers only through an explicit map.
using Elem = std::uint32_t;

/// Table entry for a result that falls outside the carrier.
inline constexpr Elem kOutside = std::numeric_limits<Elem>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called on input that violates its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A brute-force search was asked to run above its configured size cap.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Size caps for exhaustive enumeration. `TERNARY_MAX_CARRIER` overrides the
/// carrier cap; ring caps scale with it.
struct Limits {
  std::size_t max_carrier = 32;       // O(n^5) axiom checks
  std::size_t max_ring = 64;          // ideal enumeration, ring axiom checks
  std::size_t max_materialize = 256;  // dense n^3 tables
  std::size_t kronecker_degree = 8;

  static Limits from_env() {
    Limits l;
    if (const char* v = std::getenv("TERNARY_MAX_CARRIER")) {
      char* end = nullptr;
      unsigned long n = std::strtoul(v, &end, 10);
      if (end != v && n > 0) {
        l.max_carrier = n;
        l.max_ring = 2 * n;
        if (l.max_materialize < 2 * n) l.max_materialize = 2 * n;
      }
    }
    return l;
  }
};

inline const Limits& default_limits() {
  static const Limits limits = Limits::from_env();
  return limits;
}

/// Outcome of an exhaustive check. `witness` is the lexicographically least
/// failing tuple in element order.
struct Verdict {
  bool pass = true;
  std::string axiom;
  std::vector<Elem> witness;
  std::string detail;

  static Verdict ok() { return {}; }
  static Verdict fail(std::string axiom, std::vector<Elem> witness, std::string detail = {}) {
    return {false, std::move(axiom), std::move(witness), std::move(detail)};
  }
  explicit operator bool() const { return pass; }
};

/// Dense bitset over carrier indices.
class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static ElemSet full(std::size_t n) {
    ElemSet s(n);
    for (std::size_t i = 0; i < n; ++i) s.insert(static_cast<Elem>(i));
    return s;
  }

  std::size_t universe() const { return n_; }
  bool contains(Elem e) const { return (words_[e / 64] >> (e % 64)) & 1u; }
  bool insert(Elem e) {
    const std::uint64_t bit = std::uint64_t{1} << (e % 64);
    if (words_[e / 64] & bit) return false;
    words_[e / 64] |= bit;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool subset_of(const ElemSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const ElemSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  ElemSet& operator|=(const ElemSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  std::vector<Elem> elements() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (contains(static_cast<Elem>(i))) out.push_back(static_cast<Elem>(i));
    return out;
  }
  friend bool operator==(const ElemSet&, const ElemSet&) = default;
  friend auto operator<=>(const ElemSet& a, const ElemSet& b) { return a.words_ <=> b.words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace trifield
