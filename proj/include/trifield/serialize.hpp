#pragma once

// JSON export (schema 1) for carriers, envelopes, tables and verdicts, and
// the matching import for finite 3-fields.

#include <json.hpp>
#include <string>
#include <vector>

#include "trifield/automorphisms.hpp"
#include "trifield/carrier.hpp"
#include "trifield/envelope.hpp"
#include "trifield/structures.hpp"

namespace trifield {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Elem checked_index(const Json& j, std::size_t n) {
  const auto v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw PreconditionError("table entry out of range");
  return static_cast<Elem>(v);
}

inline Json rows(const std::vector<Elem>& t, std::size_t n) {
  Json out = Json::array();
  for (std::size_t a = 0; a < n; ++a)
    out.push_back(std::vector<Elem>(t.begin() + static_cast<long>(a * n), t.begin() + static_cast<long>((a + 1) * n)));
  return out;
}

}  // namespace detail

/// {"schema","kind","origin","elements","one","nu","mu"}; nu and mu are
/// flattened row-major (n^3 and n^2 element indices).
inline Json to_json(const FiniteThreeField& f) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "3-field";
  j["origin"] = f.origin();
  j["elements"] = f.carrier().labels();
  j["one"] = f.one();
  j["nu"] = f.carrier().nu_table();
  j["mu"] = f.carrier().mu_table();
  return j;
}

inline FiniteThreeField field_from_json(const Json& j) {
  if (j.value("schema", 0) != kSchemaVersion) throw PreconditionError("unsupported schema version");
  const auto labels = j.at("elements").get<std::vector<std::string>>();
  const std::size_t n = labels.size();
  const Json& nu = j.at("nu");
  const Json& mu = j.at("mu");
  if (!nu.is_array() || !mu.is_array() || nu.size() != n * n * n || mu.size() != n * n)
    throw PreconditionError("table length does not match the element count");
  auto carrier = TernaryCarrier::build(
      labels, [&](Elem a, Elem b, Elem c) { return detail::checked_index(nu.at((a * n + b) * n + c), n); },
      [&](Elem a, Elem b) { return detail::checked_index(mu.at(a * n + b), n); });
  return FiniteThreeField(std::move(carrier), detail::checked_index(j.at("one"), n), j.value("origin", std::string()));
}

/// Envelope ring tables with parity 1 (odd, from F) or 0 (even pair).
inline Json to_json(const EnvelopeRing& u) {
  const FiniteRing& r = u.ring();
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "envelope";
  j["base"] = u.base().origin();
  j["elements"] = r.labels();
  j["parity"] = u.parity();
  j["zero"] = r.zero();
  j["one"] = r.one();
  j["add"] = detail::rows(r.add_table(), r.size());
  j["mul"] = detail::rows(r.mul_table(), r.size());
  j["axioms_verified"] = u.axioms_verified();
  return j;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["pass"] = v.pass;
  if (!v.pass) {
    j["axiom"] = v.axiom;
    j["witness"] = v.witness;
    if (!v.detail.empty()) j["detail"] = v.detail;
  }
  return j;
}

/// A labelled square table, rows in header order.
inline Json table_to_json(const std::string& corner, const std::vector<std::string>& headers,
                          const std::vector<std::vector<std::string>>& cells) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "table";
  j["corner"] = corner;
  j["headers"] = headers;
  j["rows"] = cells;
  return j;
}

inline Json to_json(const GroupFingerprint& g) {
  Json j;
  j["order"] = g.order;
  j["abelian"] = g.abelian;
  j["element_orders"] = g.element_orders;
  j["involutions"] = g.involutions;
  j["abelian_invariants"] = g.abelian_invariants;
  j["name"] = g.name;
  return j;
}

/// Matrices as row-major arrays of envelope-element indices.
inline Json to_json(const MatrixField& m) {
  Json j = to_json(m.field());
  j["kind"] = m.kind() == MatrixField::Kind::Toeplitz ? "toeplitz" : "triangular";
  j["order"] = m.order();
  j["envelope"] = m.scalars().ring().labels();
  Json mats = Json::array();
  for (Elem e = 0; e < m.field().size(); ++e) mats.push_back(m.matrix(e));
  j["matrices"] = std::move(mats);
  return j;
}

inline Json to_json(const QuaternionField& h) {
  Json j = to_json(h.field());
  j["kind"] = "quaternion";
  j["envelope"] = h.scalars().ring().labels();
  Json qs = Json::array();
  for (Elem e = 0; e < h.field().size(); ++e) qs.push_back(h.quat(e));
  j["quaternions"] = std::move(qs);
  return j;
}

}  // namespace trifield
