#pragma once

// Text names for finite 3-fields, as accepted by the CLI:
//   F0(n1,...,nk)            free field over F0, optional "/<relation>" suffixes
//   F0[x]/<P>                F0[x] modulo one completely even P
//   (Z/2^m)^odd(n1,...,nk)   free field over (Z/2^m)^odd
//   Zodd(m) | (Z/2^mZ)^odd   the residue field (Z/2^m)^odd
//   A x B                    direct product (top-level 'x')
//   json:PATH                a field exported with `field build --format json`

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "trifield/poly_fields.hpp"
#include "trifield/serialize.hpp"

namespace trifield {

struct ParsedField {
  FiniteThreeField field;
  std::optional<QuotientField> quotient;  // set for polynomial quotients
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

/// Splits at `sep` outside (), [] and <>.
inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '<') ++depth;
    if (c == ')' || c == ']' || c == '>') --depth;
    if (depth < 0) throw PreconditionError("unbalanced brackets in field spec '" + s + "'");
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) throw PreconditionError("unbalanced brackets in field spec '" + s + "'");
  parts.push_back(cur);
  return parts;
}

inline unsigned parse_unsigned(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 9)
    throw PreconditionError("expected a number, got '" + s + "'");
  return static_cast<unsigned>(std::stoul(t));
}

inline std::vector<unsigned> parse_exponents(const std::string& inner) {
  std::vector<unsigned> out;
  for (const auto& p : split_top(inner, ',')) out.push_back(parse_unsigned(p));
  return out;
}

/// Reads "(...)" at `pos`; returns the inside and advances past ')'.
inline std::string take_group(const std::string& s, std::size_t& pos, char open, char close) {
  if (pos >= s.size() || s[pos] != open) throw PreconditionError(std::string("expected '") + open + "' in '" + s + "'");
  int depth = 0;
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (s[i] == open) ++depth;
    if (s[i] == close && --depth == 0) {
      std::string inner = s.substr(pos + 1, i - pos - 1);
      pos = i + 1;
      return inner;
    }
  }
  throw PreconditionError(std::string("missing '") + close + "' in '" + s + "'");
}

inline std::vector<std::string> parse_relations(const std::string& s, std::size_t pos) {
  std::vector<std::string> rels;
  while (pos < s.size()) {
    if (s.compare(pos, 2, "/<") != 0) throw PreconditionError("unexpected text '" + s.substr(pos) + "'");
    ++pos;
    rels.push_back(take_group(s, pos, '<', '>'));
  }
  return rels;
}

inline ParsedField from_quotient(const QuotientFieldSpec& spec, const Limits& limits) {
  QuotientField q = build_quotient_field(spec, limits);
  FiniteThreeField f = q.field();
  return {std::move(f), std::move(q)};
}

inline ParsedField parse_single(const std::string& text, const Limits& limits) {
  const std::string s = trim(text);
  if (s.rfind("json:", 0) == 0) {
    std::ifstream in(s.substr(5));
    if (!in) throw PreconditionError("cannot open " + s.substr(5));
    return {field_from_json(Json::parse(in)), std::nullopt};
  }
  if (s.rfind("F0[x]/", 0) == 0) {
    std::size_t pos = 5;
    auto rels = parse_relations(s, pos);
    return from_quotient({1, {0}, std::move(rels)}, limits);
  }
  if (s.rfind("F0(", 0) == 0) {
    std::size_t pos = 2;
    const auto exps = parse_exponents(take_group(s, pos, '(', ')'));
    return from_quotient({1, exps, parse_relations(s, pos)}, limits);
  }
  if (s.rfind("Zodd(", 0) == 0) {
    std::size_t pos = 4;
    const unsigned m = parse_unsigned(take_group(s, pos, '(', ')'));
    if (pos != s.size()) throw PreconditionError("unexpected text after Zodd(m)");
    return {zodd(m, limits), std::nullopt};
  }
  if (s.rfind("(Z/2^", 0) == 0) {
    const auto close = s.find(')');
    if (close == std::string::npos) throw PreconditionError("malformed residue field '" + s + "'");
    std::string m_text = s.substr(5, close - 5);
    if (!m_text.empty() && m_text.back() == 'Z') m_text.pop_back();
    const unsigned m = parse_unsigned(m_text);
    if (s.compare(close, 5, ")^odd") != 0) throw PreconditionError("expected ')^odd' in '" + s + "'");
    std::size_t pos = close + 5;
    if (pos == s.size()) return {zodd(m, limits), std::nullopt};
    const auto exps = parse_exponents(take_group(s, pos, '(', ')'));
    return from_quotient({m, exps, parse_relations(s, pos)}, limits);
  }
  throw PreconditionError("unknown field spec '" + s + "'");
}

}  // namespace detail

inline ParsedField parse_field_spec(const std::string& text, const Limits& limits = default_limits()) {
  if (detail::trim(text).rfind("json:", 0) == 0) return detail::parse_single(text, limits);
  const auto parts = detail::split_top(text, 'x');
  if (parts.size() == 1) return detail::parse_single(parts[0], limits);
  std::vector<FiniteThreeField> factors;
  for (const auto& p : parts) factors.push_back(detail::parse_single(p, limits).field);
  std::vector<const FiniteThreeField*> ptrs;
  for (const auto& f : factors) ptrs.push_back(&f);
  return {product_field(ptrs, limits), std::nullopt};
}

}  // namespace trifield
