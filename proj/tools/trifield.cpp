// trifield: command-line front end for the finite 3-field kernel.
// Exit codes: 0 success, 1 a requested check failed, 2 usage or precondition error.

#include <CLI11.hpp>

#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "trifield/trifield.hpp"

namespace {

using namespace trifield;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string spec;
  std::string format = "text";
  std::string labels = "canonical";
  unsigned precision = 16;
  int max_degree = 8;
  std::size_t limit = 0;
  std::string coeffs = "Z2";
  std::string text;
  std::size_t n = 1;
  std::string space = "power";
  std::vector<std::string> gens;
};

Limits limits_for(const Options& o) {
  Limits l = Limits::from_env();
  if (o.limit > 0) {
    l.max_carrier = o.limit;
    l.max_ring = 2 * o.limit;
    l.max_materialize = std::max<std::size_t>(l.max_materialize, 2 * o.limit);
  }
  return l;
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (o.format == a) return;
  throw PreconditionError("unsupported --format '" + o.format + "' for this verb");
}

int print_verdict(const std::string& name, const Verdict& v, const FiniteThreeField& f) {
  std::cout << name << ": " << (v.pass ? "pass" : "FAIL " + v.axiom);
  if (!v.pass && !v.witness.empty()) {
    std::cout << " at";
    for (Elem e : v.witness) std::cout << " " << (e < f.size() ? f.label(e) : std::string("<outside>"));
  }
  if (!v.pass && !v.detail.empty()) std::cout << " (" << v.detail << ")";
  std::cout << "\n";
  return v.pass ? 0 : 1;
}

// ----------------------------------------------------------------- field

int field_build(const Options& o) {
  require_format(o, {"text", "json"});
  const Limits lim = limits_for(o);
  const ParsedField p = parse_field_spec(o.spec, lim);
  const FiniteThreeField& f = p.field;
  if (o.format == "json") {
    std::cout << to_json(f).dump(2) << "\n";
    return 0;
  }
  std::cout << "field: " << f.origin() << "\n"
            << "elements: " << f.size() << "\n"
            << "one: " << f.label(f.one()) << "\n"
            << "commutative: " << (f.is_commutative() ? "yes" : "no") << "\n"
            << "carrier:";
  for (const auto& l : f.carrier().labels()) std::cout << " " << l;
  std::cout << "\n";
  return 0;
}

std::vector<std::string> display_labels(const Options& o, const ParsedField& p) {
  if (o.labels == "canonical") return p.field.carrier().labels();
  if (o.labels != "paper") throw PreconditionError("--labels must be paper or canonical");
  if (!p.quotient) throw PreconditionError("paper labels exist for F0(n), n <= 5, only");
  return paper_labels(*p.quotient);
}

std::string render(const Options& o, const std::string& corner, const std::vector<std::string>& headers,
                   const std::vector<std::vector<std::string>>& cells) {
  if (o.format == "csv") return to_csv(corner, headers, cells);
  if (o.format == "json") return table_to_json(corner, headers, cells).dump(2) + "\n";
  return to_markdown(corner, headers, cells);
}

int field_table(Options o) {
  if (o.format == "text") o.format = "markdown";
  require_format(o, {"markdown", "csv", "json"});
  const ParsedField p = parse_field_spec(o.spec, limits_for(o));
  const auto labels = display_labels(o, p);
  const CompositionTable t = cayley_table(p.field);
  std::vector<std::size_t> order(t.size());
  if (o.labels == "paper") {
    const auto po = paper_order(*p.quotient);
    order.assign(po.begin(), po.end());
  } else {
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<std::string> headers;
  for (std::size_t i : order) headers.push_back(labels[t.elements[i]]);
  std::cout << render(o, "*", headers, table_cells(t, element_labels(t, labels), order));
  return 0;
}

int field_aut(Options o) {
  if (o.format == "text") o.format = "markdown";
  require_format(o, {"markdown", "csv", "json"});
  const ParsedField p = parse_field_spec(o.spec, limits_for(o));
  if (!p.quotient || p.quotient->variables().size() != 1)
    throw PreconditionError("automorphisms are computed for singly generated polynomial quotients");
  const auto labels = display_labels(o, p);
  const CompositionTable t = automorphism_group(*p.quotient);
  const GroupFingerprint g = fingerprint_group(t);
  const auto el = element_labels(t, labels);
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  if (o.labels == "paper")
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return el[a] < el[b]; });
  std::vector<std::string> headers;
  for (std::size_t i : order) headers.push_back(el[i]);
  const auto cells = table_cells(t, el, order);
  if (o.format == "json") {
    Json j = table_to_json("o", headers, cells);
    j["group"] = to_json(g);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << render(o, "o", headers, cells);
  if (o.format == "markdown") std::cout << "\n|Aut| = " << g.order << ", " << g.name << "\n";
  return 0;
}

int field_check(const Options& o) {
  require_format(o, {"text"});
  const Limits lim = limits_for(o);
  const ParsedField p = parse_field_spec(o.spec, lim);
  const FiniteThreeField& f = p.field;
  int rc = 0;
  rc |= print_verdict("ternary group", check_ternary_group(f.carrier(), lim), f);
  rc |= print_verdict("distributivity", check_distributivity(f.carrier(), lim), f);
  rc |= print_verdict("field axioms", check_field_axioms(f, lim), f);
  const auto d = detect_derived_structure(f.carrier());
  const bool unit_ok = d.unit && *d.unit == f.one();
  std::cout << "unit: " << (unit_ok ? f.label(f.one()) : std::string("FAIL")) << "\n"
            << "additive zero: " << (d.zero ? f.label(*d.zero) + " (FAIL)" : std::string("none")) << "\n";
  if (!unit_ok || d.zero) rc = 1;
  return rc;
}

// -------------------------------------------------------------- envelope

int envelope_cmd(const Options& o) {
  require_format(o, {"text", "json"});
  const Limits lim = limits_for(o);
  const ParsedField p = parse_field_spec(o.spec, lim);
  const EnvelopeRing u = build_envelope(p.field, lim);
  const LocalReport loc = verify_local(u, lim);
  const EmbeddingReport e = embedding_criterion(u);
  const FiniteThreeField& f = p.field;
  if (o.format == "json") {
    Json j = to_json(u);
    j["maximal_ideals"] = loc.maximal_ideals.size();
    j["residue_size"] = loc.residue_size;
    j["local_with_even_part_maximal"] = loc.unique_equals_even_part;
    j["embeds_in_binary_field"] = e.embeds;
    if (e.witness) j["embedding_witness"] = {f.label(e.witness->first), f.label(e.witness->second)};
    j["embedding_routes_agree"] = e.routes_agree;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "U(" << f.origin() << "): " << u.size() << " elements (|F| = " << f.size() << ")\n"
              << "ring axioms: " << (u.axioms_verified() ? "verified" : "not checked (above cap)") << "\n"
              << "maximal ideals: " << loc.maximal_ideals.size() << ", residue size " << loc.residue_size << "\n"
              << "even part is the unique maximal ideal: " << (loc.unique_equals_even_part ? "yes" : "no") << "\n"
              << "embeds in a binary field: " << (e.embeds ? "yes" : "no");
    if (e.witness) std::cout << " (witness x = " << f.label(e.witness->first) << ", y = " << f.label(e.witness->second) << ")";
    std::cout << "\n";
  }
  return loc.unique_equals_even_part && loc.residue_size == 2 && e.routes_agree ? 0 : 1;
}

// ------------------------------------------------------------------ poly

int poly_ce(const Options& o) {
  require_format(o, {"text", "json"});
  CoeffDomain d;
  if (o.coeffs == "Z2") d = CoeffDomain::Z2;
  else if (o.coeffs == "Z") d = CoeffDomain::Integer;
  else if (o.coeffs == "Qodd") d = CoeffDomain::OddRational;
  else throw PreconditionError("--coeffs must be Z2, Z or Qodd");
  const CompletelyEvenResult r = completely_even(o.text, d, o.max_degree);
  if (o.format == "json") {
    Json j;
    j["schema"] = kSchemaVersion;
    j["polynomial"] = o.text;
    j["coeffs"] = o.coeffs;
    j["completely_even"] = r.completely_even;
    if (r.witness) j["witness"] = *r.witness;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "completely even: " << (r.completely_even ? "true" : "false") << "\n";
    if (r.witness) std::cout << "odd factor: " << *r.witness << "\n";
  }
  return 0;
}

int poly_norm2(const Options& o) {
  require_format(o, {"text"});
  const MPoly p = parse_polynomial(o.text);
  const long long r = norm2(p);
  const bool defined = boost::multiprecision::denominator(p.coefficient_sum()) % 2 != 0;
  std::cout << "|P|_2 = " << format_abs2_signed(r) << "\n"
            << "parity: " << (defined ? to_string(parity(p)) : "undefined (coefficient sum has an even denominator)")
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- dyadic

BigRational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    const BigInt num(s.substr(0, slash));
    const BigInt den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
    if (den == 0) throw PreconditionError("zero denominator");
    return BigRational(num, den);
  } catch (const std::runtime_error&) {
    throw PreconditionError("malformed rational '" + s + "'");
  }
}

int dyadic_val2(const Options& o) {
  require_format(o, {"text"});
  const BigRational q = parse_rational(o.text);
  const long long r = val2(q);
  std::cout << "val2: " << r << "\n|q|_2 = " << format_abs2_signed(r) << "\n";
  return 0;
}

int dyadic_reduce(const Options& o) {
  require_format(o, {"text"});
  const OddDenomRational q = OddDenomRational::parse(o.text);
  if (o.precision < 1 || o.precision > 63) throw PreconditionError("--precision must be in 1..63");
  std::cout << reduce_mod(q, o.precision).str() << "\n";
  return 0;
}

// ------------------------------------------------------------------- vec

Elem parse_tuple(const ThreeVectorSpace& v, std::size_t n, const std::string& text) {
  std::string s = detail::trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw PreconditionError("expected a tuple like (1,3)");
  const auto parts = detail::split_top(s.substr(1, s.size() - 2), ',');
  if (parts.size() != n) throw PreconditionError("tuple " + text + " has the wrong length");
  const auto& labels = v.scalars().ring().labels();
  std::vector<Elem> digits;
  for (const auto& p : parts) {
    const auto it = std::find(labels.begin(), labels.end(), detail::trim(p));
    if (it == labels.end()) throw PreconditionError("'" + p + "' is not an element of U(F)");
    digits.push_back(static_cast<Elem>(it - labels.begin()));
  }
  return static_cast<Elem>(detail::encode(digits, labels.size()));
}

ThreeVectorSpace make_space(const Options& o, const Limits& lim) {
  const FiniteThreeField f = parse_field_spec(o.spec, lim).field;
  if (o.space == "power") return power_space(f, o.n, lim);
  if (o.space == "free") return free_space(f, o.n, lim);
  if (o.space == "prime") return space_over_prime_field(f, lim);
  throw PreconditionError("--space must be power, free or prime");
}

int vec_free(const Options& o) {
  require_format(o, {"text"});
  const Limits lim = limits_for(o);
  const ThreeVectorSpace v = free_space(parse_field_spec(o.spec, lim).field, o.n, lim);
  std::cout << "(F^" << o.n << ")^free over " << v.field().origin() << ": " << v.size() << " elements\n";
  return print_verdict("3-vector space axioms", v.verify(), v.field());
}

int vec_resolve(const Options& o) {
  require_format(o, {"text", "json"});
  const Limits lim = limits_for(o);
  const ThreeVectorSpace v = make_space(o, lim);
  const std::size_t len = o.space == "prime" ? 1 : o.n;
  std::vector<Elem> gens;
  for (const auto& g : o.gens) {
    if (o.space == "prime") {
      const ParsedField p = parse_field_spec(o.spec, lim);
      gens.push_back(p.quotient ? p.quotient->element(g) : p.field.find(g));
    } else {
      gens.push_back(parse_tuple(v, len, g));
    }
  }
  const FreeResolution r = free_resolution(v, gens, lim);
  if (o.format == "json") {
    Json j;
    j["schema"] = kSchemaVersion;
    j["generators"] = r.generators;
    j["free_size"] = r.free_size;
    j["space_size"] = r.space_size;
    j["kernel_size"] = r.kernel_size;
    j["fibers_uniform"] = r.fibers_uniform;
    j["formula_holds"] = r.formula_holds;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "|V| = " << r.space_size << ", |V^free| = " << r.free_size << ", |ker phi_V| = " << r.kernel_size
              << "\n2^(n-1)|F|^n / |ker| = " << r.free_size << "/" << r.kernel_size << " = " << r.formula_value
              << (r.formula_holds ? " = |V|" : " != |V|") << "\n";
  }
  return r.formula_holds ? 0 : 1;
}

// ---------------------------------------------------------------- struct

/// (Z/2^m)^odd exponent m when F is its own prime field.
std::optional<unsigned> residue_exponent(const FiniteThreeField& f, const Limits& lim) {
  const PrimeSubfield p = prime_subfield(f, lim);
  if (p.characteristic != f.size()) return std::nullopt;
  return p.zodd_exponent;
}

int struct_matrix(const Options& o, bool toeplitz) {
  require_format(o, {"text", "json"});
  const Limits lim = limits_for(o);
  const FiniteThreeField f = parse_field_spec(o.spec, lim).field;
  const MatrixField m = toeplitz ? toeplitz_field(o.n, f, lim) : triangular_field(o.n, f, lim);
  const FiniteThreeField& t = m.field();
  const Verdict axioms = check_field_axioms(t, lim);
  bool inverses = true;
  for (Elem e = 0; e < t.size(); ++e) {
    const auto x = m.find(m.inverse_matrix(m.matrix(e)));
    inverses &= x && *x == t.inverse(e);
  }
  const auto witness = noncommuting_pair(t);
  std::optional<bool> iso;
  if (toeplitz) {
    if (const auto k = residue_exponent(f, lim)) {
      const QuotientField fn = build_quotient_field({*k, {static_cast<unsigned>(o.n)}, {}}, lim);
      iso = toeplitz_to_polynomial_field(m, fn, lim).has_value();
    }
  }
  if (o.format == "json") {
    Json j = to_json(m);
    j["axioms"] = to_json(axioms);
    j["inverse_by_forward_substitution"] = inverses;
    j["commutative"] = !witness;
    if (iso) j["isomorphic_to_polynomial_field"] = *iso;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << t.origin() << ": " << t.size() << " elements\n";
    print_verdict("3-field axioms", axioms, t);
    std::cout << "forward-substitution inverses: " << (inverses ? "agree" : "DISAGREE") << "\n"
              << "commutative: " << (witness ? "no" : "yes");
    if (witness) std::cout << " (witness " << t.label(witness->first) << ", " << t.label(witness->second) << ")";
    std::cout << "\n";
    if (iso) std::cout << "isomorphic to F(" << o.n << ") by constructed map: " << (*iso ? "yes" : "no") << "\n";
  }
  const bool claimed = !toeplitz || (!witness && iso.value_or(true));
  return axioms.pass && inverses && claimed ? 0 : 1;
}

int struct_quaternion(const Options& o) {
  require_format(o, {"text", "json"});
  const Limits lim = limits_for(o);
  const QuaternionField h = quaternion_field(parse_field_spec(o.spec, lim).field, lim);
  const QuaternionReport r = verify_quaternions(h);
  const Verdict axioms = check_field_axioms(h.field(), lim);
  const FiniteThreeField& f = h.field();
  if (o.format == "json") {
    Json j = to_json(h);
    j["axioms"] = to_json(axioms);
    j["all_invertible"] = r.all_invertible;
    j["coefficient_sum_identity"] = r.gamma_identity;
    j["conjugation_anti_automorphism"] = r.conjugation_anti;
    j["i1i2"] = f.label(r.i1i2);
    j["i2i1"] = f.label(r.i2i1);
    j["commutative"] = !r.noncommutative;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << f.origin() << ": " << r.size << " elements\n";
    print_verdict("3-field axioms", axioms, f);
    std::cout << "q q^-1 = 1 for every q: " << (r.all_invertible ? "yes" : "NO") << "\n"
              << "coefficient-sum identity: " << (r.gamma_identity ? "holds" : "FAILS") << "\n"
              << "conjugation is an anti-automorphism: " << (r.conjugation_anti ? "yes" : "NO") << "\n"
              << "i1 i2 = " << f.label(r.i1i2) << ", i2 i1 = " << f.label(r.i2i1) << "\n"
              << "commutative: " << (r.noncommutative ? "no" : "yes") << "\n";
  }
  return axioms.pass && r.all_invertible && r.gamma_identity && r.conjugation_anti ? 0 : 1;
}

int struct_groupalg(const Options& o) {
  require_format(o, {"text", "json"});
  const Limits lim = limits_for(o);
  const FiniteThreeField f = parse_field_spec(o.spec, lim).field;
  const GroupAlgebraReport g = group_algebra(cyclic_group(o.n), f, lim);
  std::optional<bool> iso;
  const bool two_power = (o.n & (o.n - 1)) == 0;
  if (g.field && two_power)
    if (const auto k = residue_exponent(f, lim)) {
      const QuotientField fn = build_quotient_field({*k, {static_cast<unsigned>(o.n)}, {}}, lim);
      iso = cyclic_group_algebra_to_polynomial_field(g, f, fn, lim).has_value();
    }
  if (o.format == "json") {
    Json j;
    j["schema"] = kSchemaVersion;
    j["group"] = "Z/" + std::to_string(o.n);
    j["base"] = f.origin();
    j["size"] = g.size;
    j["is_3field"] = g.is_3field;
    j["sampled"] = g.sampled;
    if (g.witness) j["witness"] = *g.witness;
    if (iso) j["isomorphic_to_polynomial_field"] = *iso;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << f.origin() << "[Z/" << o.n << "]: " << g.size << " elements\n"
              << "3-field: " << (g.is_3field ? "yes" : "no") << (g.sampled ? " (sampled)" : "") << "\n";
    if (g.witness) std::cout << "non-invertible witness: " << *g.witness << "\n";
    if (iso) std::cout << "isomorphic to F(" << o.n << ") by constructed map: " << (*iso ? "yes" : "no") << "\n";
  }
  if (g.field && !check_field_axioms(*g.field, lim).pass) return 1;
  return iso.value_or(true) ? 0 : 1;
}

// ----------------------------------------------------------- paper-suite

int paper_suite(const Options& o) {
  require_format(o, {"text", "json"});
  const SuiteLedger ledger = run_paper_suite(limits_for(o), &std::cerr);
  if (o.format == "json") std::cout << to_json(ledger).dump(2) << "\n";
  else std::cout << ledger_text(ledger);
  return ledger.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::cerr << "trifield " << kVersion << "\n";
  CLI::App app{"Finite unital 3-fields: construction, verification and table export"};
  app.require_subcommand(1);
  Options o;
  int (*action)(const Options&) = nullptr;
  app.add_option("--limit", o.limit, "enumeration cap for carriers (overrides TERNARY_MAX_CARRIER)");

  auto with_spec = [&](CLI::App* c) {
    c->add_option("--spec", o.spec, "field, e.g. F0(3), Zodd(2), (Z/2^2)^odd(3), F0[x]/<x^4-1>, F0(2)xF0(2)")
        ->required();
  };
  auto with_format = [&](CLI::App* c, const char* help) { c->add_option("--format", o.format, help); };
  auto bind = [&](CLI::App* c, int (*fn)(const Options&)) { c->callback([&action, fn] { action = fn; }); };

  auto* field = app.add_subcommand("field", "build, tabulate, and check finite 3-fields");
  field->require_subcommand(1);
  auto* fb = field->add_subcommand("build", "materialize a field and summarize it");
  with_spec(fb);
  with_format(fb, "text | json");
  bind(fb, field_build);
  auto* ft = field->add_subcommand("table", "multiplication table");
  with_spec(ft);
  with_format(ft, "markdown | csv | json");
  ft->add_option("--labels", o.labels, "paper | canonical");
  bind(ft, [](const Options& x) { return field_table(x); });
  auto* fa = field->add_subcommand("aut", "automorphism group and its composition table");
  with_spec(fa);
  with_format(fa, "markdown | csv | json");
  fa->add_option("--labels", o.labels, "paper | canonical");
  bind(fa, [](const Options& x) { return field_aut(x); });
  auto* fc = field->add_subcommand("check", "run the axiom suite");
  with_spec(fc);
  bind(fc, field_check);

  auto* env = app.add_subcommand("envelope", "envelope ring U(F), locality and the embedding criterion");
  with_spec(env);
  with_format(env, "text | json");
  bind(env, envelope_cmd);

  auto* poly = app.add_subcommand("poly", "polynomial predicates");
  poly->require_subcommand(1);
  auto* ce = poly->add_subcommand("ce", "is the polynomial completely even");
  ce->add_option("polynomial", o.text)->required();
  ce->add_option("--coeffs", o.coeffs, "Z2 | Z | Qodd");
  ce->add_option("--max-degree", o.max_degree, "largest factor degree searched over Z");
  with_format(ce, "text | json");
  bind(ce, poly_ce);
  auto* nm = poly->add_subcommand("norm2", "parity and 2-adic norm of the coefficient sum");
  nm->add_option("polynomial", o.text)->required();
  bind(nm, poly_norm2);

  auto* dy = app.add_subcommand("dyadic", "2-adic arithmetic on rationals");
  dy->require_subcommand(1);
  auto* v2 = dy->add_subcommand("val2", "2-adic valuation of p/q");
  v2->add_option("rational", o.text)->required();
  bind(v2, dyadic_val2);
  auto* rd = dy->add_subcommand("reduce", "image of p/q (q odd) in Z/2^N");
  rd->add_option("rational", o.text)->required();
  rd->add_option("--precision", o.precision, "N, default 16");
  bind(rd, dyadic_reduce);

  auto* vec = app.add_subcommand("vec", "3-vector spaces");
  vec->require_subcommand(1);
  auto* vf = vec->add_subcommand("free", "the free space (F^n)^free");
  with_spec(vf);
  vf->add_option("--n", o.n, "dimension");
  bind(vf, vec_free);
  auto* vr = vec->add_subcommand("resolve", "free resolution of a space from generators");
  with_spec(vr);
  vr->add_option("--n", o.n, "dimension for power and free spaces");
  vr->add_option("--space", o.space, "power (F^n) | free ((F^n)^free) | prime (F over its prime field)");
  vr->add_option("--gen", o.gens, "generator: a tuple over U(F) such as (1,3), or a field element for --space prime")
      ->required();
  with_format(vr, "text | json");
  bind(vr, vec_resolve);

  auto* st = app.add_subcommand("struct", "constructed fields");
  st->require_subcommand(1);
  auto* tz = st->add_subcommand("toeplitz", "Toeplitz field T(n, F)");
  with_spec(tz);
  tz->add_option("--n", o.n, "matrix order");
  with_format(tz, "text | json");
  bind(tz, [](const Options& x) { return struct_matrix(x, true); });
  auto* tr = st->add_subcommand("triangular", "triangular field D(n, F)");
  with_spec(tr);
  tr->add_option("--n", o.n, "matrix order");
  with_format(tr, "text | json");
  bind(tr, [](const Options& x) { return struct_matrix(x, false); });
  auto* qu = st->add_subcommand("quaternion", "quaternion field HF");
  with_spec(qu);
  with_format(qu, "text | json");
  bind(qu, struct_quaternion);
  auto* ga = st->add_subcommand("groupalg", "group 3-algebra F[Z/n]");
  with_spec(ga);
  ga->add_option("--order", o.n, "order of the cyclic group")->required();
  with_format(ga, "text | json");
  bind(ga, struct_groupalg);

  auto* ps = app.add_subcommand("paper-suite", "run acceptance criteria 1-11 and print the ledger");
  with_format(ps, "text | json");
  bind(ps, paper_suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) {
    std::cerr << app.help();
    return 2;
  }
  try {
    return action(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
