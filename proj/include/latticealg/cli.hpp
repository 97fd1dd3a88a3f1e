#pragma once

// Command-line front end. `run` is the whole program minus main(), so tests
// drive it with string streams.
//
//   latticealg verify|classify|center|spectrum|inner|report
//              [SOURCE] [ELEMENT...] [--input FILE | --builtin NAME]
//              [--element NAME]... [--family NAME]... [--gamma "(a,b),(c,d)"]
//              [--op NAME]... [--grid N] [--format text|json|markdown] [--cap N]
//
// SOURCE is `builtin:NAME` or a file path. Elements and operators are names
// from the algebra file or inline JSON arrays. LATTICEALG_CAP overrides --cap.
//
// Exit codes: 0 success, 1 mathematical violation, 2 input error.

#include "latticealg/builtins.hpp"
#include "latticealg/inner.hpp"
#include "latticealg/io.hpp"
#include "latticealg/report.hpp"
#include "latticealg/spectra.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <regex>
#include <sstream>

namespace latticealg::cli {

using io::json;

enum class Command { verify, classify, center, spectrum, inner, report };
enum class Format { text, json, markdown };

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;

/// Grids with more points than this are refused.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 20;

struct RunConfig {
  Command command = Command::verify;
  std::optional<std::string> input;    // file path
  std::optional<std::string> builtin;  // builtin name
  std::vector<std::string> elements;
  std::vector<std::string> family;
  std::optional<std::string> gamma;
  std::vector<std::string> ops;
  unsigned grid = 2;
  Format format = Format::text;
  std::size_t cap = kDefaultEnumerationCap;
};

/// Output of one command on one algebra.
struct Outcome {
  report::Document doc;
  json data = json::object();
  bool violation = false;
};

// ---------------------------------------------------------------------------
// Parsing helpers

inline Command command_from_string(const std::string& s) {
  static const std::map<std::string, Command> m{
      {"verify", Command::verify},     {"classify", Command::classify}, {"center", Command::center},
      {"spectrum", Command::spectrum}, {"inner", Command::inner},       {"report", Command::report}};
  const auto it = m.find(s);
  if (it == m.end()) throw InputError("unknown command '" + s + "'");
  return it->second;
}

inline const char* to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::classify: return "classify";
    case Command::center: return "center";
    case Command::spectrum: return "spectrum";
    case Command::inner: return "inner";
    case Command::report: return "report";
  }
  return "?";
}

inline Format format_from_string(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "json") return Format::json;
  if (s == "markdown" || s == "md") return Format::markdown;
  throw InputError("unknown format '" + s + "'");
}

inline std::size_t parse_positive(const std::string& what, const std::string& s) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size() || v == 0 || s[0] == '-')
    throw InputError(what + " must be a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(v);
}

/// "(0,1),(1,1)" -> {(0,1),(1,1)}; "" or "{}" is the empty set.
inline GammaSet parse_gamma(const std::string& s) {
  GammaSet g;
  std::string rest = s;
  rest.erase(std::remove_if(rest.begin(), rest.end(), ::isspace), rest.end());
  if (rest.empty() || rest == "{}") return g;
  if (rest.front() == '{' && rest.back() == '}') rest = rest.substr(1, rest.size() - 2);
  static const std::regex pair(R"(\((\d+),(\d+)\))");
  std::size_t consumed = 0;
  for (auto it = std::sregex_iterator(rest.begin(), rest.end(), pair); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    const auto at = static_cast<std::size_t>(m.position(0));
    if (at != consumed && !(at == consumed + 1 && rest[consumed] == ','))
      throw InputError("malformed Γ near '" + rest.substr(consumed) + "'");
    g.insert({std::stoul(m[1].str()), std::stoul(m[2].str())});
    consumed = at + static_cast<std::size_t>(m.length(0));
  }
  if (consumed != rest.size()) throw InputError("malformed Γ near '" + rest.substr(consumed) + "'");
  return g;
}

inline std::string gamma_string(const GammaSet& g) {
  if (g.empty()) return "∅";
  std::string out = "{";
  bool first = true;
  for (auto [a, b] : g) {
    out += (first ? "" : ", ") + std::string("(") + std::to_string(a) + "," + std::to_string(b) + ")";
    first = false;
  }
  return out + "}";
}

inline json gamma_json(const GammaSet& g) {
  json a = json::array();
  for (auto [x, y] : g) a.push_back({x, y});
  return a;
}

inline std::string known_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out.empty() ? "none" : out;
}

/// Bare rationals such as [0, 7/3, 0] are not JSON; quote them.
inline std::string quote_rationals(const std::string& text) {
  static const std::regex bare(R"re("?(-?\d+/\d+)"?)re");
  return std::regex_replace(text, bare, "\"$1\"");
}

/// Named element of the algebra, or an inline JSON coordinate array.
inline Element resolve_element(const Algebra& alg, const std::string& ref) {
  if (const auto it = alg.elements.find(ref); it != alg.elements.end()) return it->second;
  if (!ref.empty() && ref.front() == '[')
    return io::element_from_json(io::parse_text(quote_rationals(ref), "element"), alg.dim());
  std::vector<std::string> names;
  for (const auto& [n, x] : alg.elements) names.push_back(n);
  throw InputError("unknown element '" + ref + "' (known: " + known_names(names) + ")");
}

inline OperatorMatrix resolve_operator(const Algebra& alg, const std::string& ref) {
  if (const auto it = alg.operators.find(ref); it != alg.operators.end()) return OperatorMatrix(it->second);
  if (!ref.empty() && ref.front() == '[')
    return OperatorMatrix(io::matrix_from_json(io::parse_text(quote_rationals(ref), "operator"), alg.dim()));
  std::vector<std::string> names;
  for (const auto& [n, m] : alg.operators) names.push_back(n);
  throw InputError("unknown operator '" + ref + "' (known: " + known_names(names) + ")");
}

/// (name, element) pairs: the requested ones, or every named element.
inline std::vector<std::pair<std::string, Element>> selected_elements(const Algebra& alg,
                                                                      const RunConfig& cfg) {
  std::vector<std::pair<std::string, Element>> out;
  if (cfg.elements.empty())
    for (const auto& [n, x] : alg.elements) out.emplace_back(n, x);
  for (const auto& ref : cfg.elements) out.emplace_back(ref, resolve_element(alg, ref));
  return out;
}

inline std::string identity_text(const Algebra& alg) {
  return alg.has_identity() ? report::symbolic(alg, alg.e()) : "none";
}

inline std::string root_string(const NumericRoot& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  if (r.real) os << "≈" << static_cast<double>(r.value.real());
  else
    os << "≈" << static_cast<double>(r.value.real()) << (r.value.imag() < 0 ? "-" : "+")
       << static_cast<double>(std::fabs(r.value.imag())) << "i";
  if (r.multiplicity > 1) os << " (×" << r.multiplicity << ")";
  return os.str();
}

inline std::string sigma_string(const SpectrumResult& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [r, m] : s.rational_roots) {
    out += (first ? "" : ",") + format_scalar(r);
    first = false;
  }
  for (const auto& r : s.other_roots) {
    out += (first ? "" : ",") + root_string(r);
    first = false;
  }
  return out + "}";
}

inline std::string radius_string(const SpectrumResult& s) {
  if (s.exact_spectral_radius) return format_scalar(*s.exact_spectral_radius);
  std::ostringstream os;
  os << std::setprecision(10) << "≈" << static_cast<double>(s.spectral_radius.value);
  return os.str();
}

inline json spectrum_json(const SpectrumResult& s) {
  json j;
  json cp = json::array();
  for (const auto& c : s.char_poly.coeffs()) cp.push_back(io::to_json(c));
  j["char_poly"] = cp;
  j["factored"] = s.factored();
  json rr = json::array();
  for (const auto& [r, m] : s.rational_roots) rr.push_back({{"value", io::to_json(r)}, {"multiplicity", m}});
  j["rational_roots"] = rr;
  json other = json::array();
  for (const auto& r : s.other_roots)
    other.push_back({{"re", static_cast<double>(r.value.real())},
                     {"im", static_cast<double>(r.value.imag())},
                     {"radius", static_cast<double>(r.radius)},
                     {"real", r.real},
                     {"multiplicity", r.multiplicity}});
  j["other_roots"] = other;
  j["spectral_radius"] = {{"value", static_cast<double>(s.spectral_radius.value)},
                          {"error", static_cast<double>(s.spectral_radius.error)},
                          {"exact", s.exact_spectral_radius ? json(io::to_json(*s.exact_spectral_radius))
                                                            : json(nullptr)}};
  j["all_real"] = s.all_real;
  j["all_nonnegative"] = s.all_nonnegative;
  return j;
}

// ---------------------------------------------------------------------------
// Commands

inline Outcome cmd_verify(const Algebra& alg, const RunConfig&) {
  Outcome out;
  out.doc.title = "verify " + alg.name();
  const auto r = verify_axioms(alg);
  auto& ax = out.doc.section("Axioms");
  report::Table t{{"check", "result", "detail"}, {}};
  std::string neg;
  if (r.negative_entry) {
    const auto [i, j, k] = *r.negative_entry;
    neg = "negative entry c[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "]";
  }
  t.rows.push_back({"positivity", r.positivity ? "ok" : "VIOLATED", neg});
  std::string assoc;
  if (r.associativity_witness) {
    const auto& w = *r.associativity_witness;
    assoc = "(" + alg.label(w[0]) + "·" + alg.label(w[1]) + ")·" + alg.label(w[2]) + " differs";
  }
  t.rows.push_back({"associativity", r.associativity ? "ok" : "VIOLATED", assoc});
  if (r.identity_declared) {
    t.rows.push_back({"identity laws", r.identity_laws ? "ok" : "VIOLATED",
                      r.identity_witness ? "fails on " + alg.label(*r.identity_witness) : ""});
    t.rows.push_back({"identity agrees with solved", r.identity_matches ? "ok" : "VIOLATED", ""});
  }
  t.rows.push_back({"submultiplicativity", to_string(r.submultiplicativity), r.submultiplicativity_reason});
  ax.table(t);

  auto& id = out.doc.section("Identity");
  if (r.found_identity) {
    const auto& f = *r.found_identity;
    id.line("identity: " + report::symbolic(alg, f.e) + " " + report::coords(f.e));
    id.line("positive: " + report::yes_no(f.is_positive));
    id.line("norm one: " + report::yes_no(f.norm_one));
  } else {
    id.line("no identity");
  }

  out.data["positivity"] = r.positivity;
  out.data["negative_entry"] =
      r.negative_entry ? json::array({std::get<0>(*r.negative_entry), std::get<1>(*r.negative_entry),
                                      std::get<2>(*r.negative_entry)})
                       : json(nullptr);
  out.data["associativity"] = r.associativity;
  out.data["associativity_witness"] =
      r.associativity_witness ? json(*r.associativity_witness) : json(nullptr);
  out.data["identity_declared"] = r.identity_declared;
  out.data["identity_laws"] = r.identity_laws;
  out.data["identity_matches"] = r.identity_matches;
  out.data["identity"] = r.found_identity ? io::to_json(r.found_identity->e) : json(nullptr);
  out.data["identity_positive"] = r.found_identity ? json(r.found_identity->is_positive) : json(nullptr);
  out.data["identity_norm_one"] = r.found_identity ? json(r.found_identity->norm_one) : json(nullptr);
  out.data["submultiplicativity"] = to_string(r.submultiplicativity);
  out.data["submultiplicativity_reason"] = r.submultiplicativity_reason;
  out.data["ok"] = r.ok();
  out.violation = !r.ok();
  return out;
}

inline std::size_t grid_points(std::size_t dim, unsigned grid) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    n *= grid + 1u;
    if (n > kMaxGridPoints) return n;
  }
  return n;
}

inline void add_element_table(report::Section& sec, const Algebra& alg, const std::vector<Element>& xs) {
  report::Table t{{"#", "element", "coordinates"}, {}};
  for (std::size_t i = 0; i < xs.size(); ++i)
    t.rows.push_back({std::to_string(i + 1), report::symbolic(alg, xs[i]), report::coords(xs[i])});
  sec.table(t);
}

inline json elements_json(const std::vector<Element>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(io::to_json(x));
  return a;
}

inline Outcome cmd_classify(const Algebra& alg, const RunConfig& cfg) {
  Outcome out;
  out.doc.title = "classify " + alg.name();

  if (alg.has_identity()) {
    const auto oi = enumerate_order_idempotents(alg);
    auto& s = out.doc.section("Order idempotents (complete)");
    s.line(std::to_string(oi.size()) + " elements");
    add_element_table(s, alg, oi);
    out.data["order_idempotents"] = elements_json(oi);
  } else {
    out.doc.section("Order idempotents").line("not defined: no identity");
    out.data["order_idempotents"] = nullptr;
  }

  if (grid_points(alg.dim(), cfg.grid) > kMaxGridPoints)
    throw InputError("grid of " + std::to_string(cfg.grid + 1) + "^" + std::to_string(alg.dim()) +
                     " points is too large; lower --grid");
  const auto grid = GridSpec::uniform(cfg.grid);

  // BP_l ∩ BP_r over the grid together with the named elements.
  auto lr = search_band_projections(alg, grid, ProjectionClass::left_and_right);
  for (const auto& [n, x] : alg.elements)
    if (is_left_bp(alg, x).holds && is_right_bp(alg, x).holds &&
        std::find(lr.begin(), lr.end(), x) == lr.end())
      lr.push_back(x);
  std::sort(lr.begin(), lr.end(), [](const Element& a, const Element& b) { return lex_less(a, b); });
  {
    auto& s = out.doc.section("Left and right band projections (grid 1/" + std::to_string(cfg.grid) +
                              " and named elements)");
    s.line(std::to_string(lr.size()) + " elements");
    add_element_table(s, alg, lr);
  }
  out.data["grid"] = cfg.grid;
  out.data["left_and_right_band_projections"] = elements_json(lr);

  const auto bp = search_band_projections(alg, grid, ProjectionClass::band);
  {
    auto& s = out.doc.section("Band projections on grid 1/" + std::to_string(cfg.grid));
    s.line(std::to_string(bp.size()) + " grid points (membership exact, listing not complete)");
    add_element_table(s, alg, bp);
    if (alg.has_identity()) {
      std::size_t not_oi = 0;
      for (const auto& x : bp) not_oi += !*is_order_idempotent(alg, x);
      s.line(not_oi == 0 ? "BP = OI on this grid"
                         : std::to_string(not_oi) + " grid band projections are not order idempotents");
      out.data["grid_bp_not_oi"] = not_oi;
    }
  }
  out.data["band_projections_on_grid"] = elements_json(bp);

  auto& s = out.doc.section("Named elements");
  report::Table t{{"name", "element", "OI", "BP", "BP_l", "BP_r", "note"}, {}};
  json named = json::array();
  for (const auto& [name, x] : selected_elements(alg, cfg)) {
    const auto c = classify(alg, x);
    const std::string oi = c.is_oi ? report::yes_no(*c.is_oi) : "n/a";
    std::string note = c.nonpositive ? "not positive" : "";
    if (c.is_oi && (*c.is_oi != c.is_left_bp || *c.is_oi != c.is_right_bp)) {
      note = "BP_l/BP_r disagree with OI";
      out.violation = true;
    }
    t.rows.push_back({name, report::symbolic(alg, x), oi, report::yes_no(c.is_bp),
                      report::yes_no(c.is_left_bp), report::yes_no(c.is_right_bp), note});
    named.push_back({{"name", name},
                     {"element", io::to_json(x)},
                     {"oi", c.is_oi ? json(*c.is_oi) : json(nullptr)},
                     {"bp", c.is_bp},
                     {"bp_l", c.is_left_bp},
                     {"bp_r", c.is_right_bp},
                     {"nonpositive", c.nonpositive}});
  }
  s.table(t);
  out.data["elements"] = named;
  return out;
}

inline std::string label_set(const Algebra& alg, const std::set<std::size_t>& s) {
  std::string out = "{";
  bool first = true;
  for (auto i : s) {
    out += (first ? "" : ", ") + alg.label(i);
    first = false;
  }
  return out + "}";
}

inline Outcome cmd_center(const Algebra& alg, const RunConfig& cfg) {
  if (!alg.has_identity()) throw Inapplicable("center: algebra has no identity");
  Outcome out;
  out.doc.title = "center " + alg.name();
  const auto ii = identity_ideal(alg);
  const auto rep = ck_representation(alg);

  auto& s = out.doc.section("Identity ideal");
  s.line("basis: " + label_set(alg, ii.ideal.support));
  s.line("disjoint complement: " + label_set(alg, ii.complement));
  s.line("band generated by e equals the ideal: " + report::yes_no(ii.band_equals_ideal));
  s.line("random decompositions x = Px + (x - Px) checked: " + std::to_string(ii.reconstructions) +
         (ii.decomposition_ok ? ", all ok" : ", FAILED"));

  auto& k = out.doc.section("Atoms and K");
  report::Table t{{"point", "atom", "coordinates"}, {}};
  json atoms = json::array();
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    t.rows.push_back({alg.label(rep.points[i]), report::symbolic(alg, rep.atoms[i]),
                      report::coords(rep.atoms[i])});
    atoms.push_back({{"point", rep.points[i]}, {"atom", io::to_json(rep.atoms[i])}});
  }
  k.line("|K| = " + std::to_string(rep.points.size()));
  k.table(t);

  auto& d = out.doc.section("Decomposition of named elements");
  report::Table dt{{"name", "element", "in ideal", "component in ideal", "remainder", "C(K) values"}, {}};
  json decs = json::array();
  for (const auto& [name, x] : selected_elements(alg, cfg)) {
    const Element in = ii.component(x);
    const Element rest = x - in;
    std::string vals = "(";
    const auto f = rep.coords(in);
    for (std::size_t i = 0; i < f.size(); ++i) vals += (i ? ", " : "") + format_scalar(f[i]);
    vals += ")";
    const bool member = in_identity_ideal(alg, x);
    dt.rows.push_back({name, report::symbolic(alg, x), report::yes_no(member), report::symbolic(alg, in),
                       report::symbolic(alg, rest), vals});
    json fv = json::array();
    for (const auto& v : f) fv.push_back(io::to_json(v));
    decs.push_back({{"name", name},
                    {"element", io::to_json(x)},
                    {"in_ideal", member},
                    {"component", io::to_json(in)},
                    {"remainder", io::to_json(rest)},
                    {"ck_values", fv}});
  }
  d.table(dt);

  json basis = json::array();
  for (auto i : ii.ideal.support) basis.push_back(i);
  json comp = json::array();
  for (auto i : ii.complement) comp.push_back(i);
  out.data["ideal_basis"] = basis;
  out.data["complement"] = comp;
  out.data["band_equals_ideal"] = ii.band_equals_ideal;
  out.data["decomposition_ok"] = ii.decomposition_ok;
  out.data["atoms"] = atoms;
  out.data["elements"] = decs;
  out.violation = !ii.band_equals_ideal || !ii.decomposition_ok;
  return out;
}

inline Outcome cmd_spectrum(const Algebra& alg, const RunConfig& cfg) {
  if (!alg.has_identity()) throw Inapplicable("spectrum: algebra has no identity");
  Outcome out;
  out.doc.title = "spectrum " + alg.name();
  auto& s = out.doc.section("Spectra");
  report::Table t{{"name", "element", "det(L - λI)", "σ", "r", "real", "≥ 0", "BP check"}, {}};
  json rows = json::array();
  for (const auto& [name, x] : selected_elements(alg, cfg)) {
    const auto sp = spectrum(alg, x);
    std::string bp_check = "-";
    json bp_json = nullptr;
    if (is_band_projection(alg, x).holds) {
      const auto r = check_bp_spectrum(alg, x);
      bp_check = r.ok() ? "ok" : "FAILED";
      bp_json = r.ok();
      out.violation |= !r.ok();
    }
    t.rows.push_back({name, report::symbolic(alg, x), sp.factored(), sigma_string(sp), radius_string(sp),
                      report::yes_no(sp.all_real), report::yes_no(sp.all_nonnegative), bp_check});
    json j = spectrum_json(sp);
    j["name"] = name;
    j["element"] = io::to_json(x);
    j["bp_spectrum_ok"] = bp_json;
    rows.push_back(j);
  }
  s.table(t);
  out.data["spectra"] = rows;
  return out;
}

/// The family for `inner`: the requested members, else the largest maximal
/// family among the named elements.
inline FamilyCheck select_family(const Algebra& alg, const RunConfig& cfg) {
  if (!cfg.family.empty()) {
    std::vector<Element> members;
    for (const auto& ref : cfg.family) members.push_back(resolve_element(alg, ref));
    return validate_family(alg, std::move(members));
  }
  std::vector<Element> pool;
  for (const auto& [n, x] : alg.elements) pool.push_back(x);
  return validate_family(alg, find_families(alg, pool).front().members());
}

inline std::string member_name(const Algebra& alg, const Element& x) {
  for (const auto& [n, y] : alg.elements)
    if (y == x) return n;
  return report::symbolic(alg, x);
}

inline Outcome cmd_inner(const Algebra& alg, const RunConfig& cfg) {
  Outcome out;
  out.doc.title = "inner " + alg.name();
  const auto fc = select_family(alg, cfg);
  auto& fs = out.doc.section("Family");
  if (!fc.valid()) {
    fs.line("invalid family: " + fc.violation);
    out.data["family_valid"] = false;
    out.data["violation"] = fc.violation;
    out.data["witness"] = fc.witness ? json({fc.witness->first, fc.witness->second}) : json(nullptr);
    out.violation = true;
    return out;
  }
  const auto& fam = *fc.family;
  report::Table ft{{"index", "member", "element"}, {}};
  json members = json::array();
  for (std::size_t i = 0; i < fam.size(); ++i) {
    ft.rows.push_back({std::to_string(i), member_name(alg, fam[i]), report::symbolic(alg, fam[i])});
    members.push_back(io::to_json(fam[i]));
  }
  fs.line("orthogonal family of left and right band projections, size " + std::to_string(fam.size()));
  fs.table(ft);
  out.data["family_valid"] = true;
  out.data["family"] = members;

  const auto en = enumerate_inner(alg, fam, cfg.cap);
  auto& is = out.doc.section("Inner band projections");
  is.line(std::to_string(en.size()) + " distinct projections from " + std::to_string(en.subsets) +
          " subsets Γ");
  report::Table it{{"#", "Γ", "projection"}, {}};
  json projs = json::array();
  for (std::size_t i = 0; i < en.projections.size(); ++i) {
    const auto& [g, m] = en.projections[i];
    it.rows.push_back({std::to_string(i + 1), gamma_string(g), report::describe_projection(alg, m)});
    projs.push_back({{"gamma", gamma_json(g)}, {"matrix", io::to_json(m)}});
  }
  is.table(it);
  out.data["inner_projections"] = projs;

  // Boolean laws over every pair of representative Γ.
  std::size_t pairs = 0;
  bool laws_ok = true;
  for (const auto& a : en.projections)
    for (const auto& b : en.projections) {
      ++pairs;
      laws_ok &= boolean_laws(alg, fam, a.first, b.first).ok();
    }
  out.doc.section("Boolean laws")
      .line("meet, join and complement laws on " + std::to_string(pairs) + " pairs: " +
            (laws_ok ? "ok" : "FAILED"));
  out.data["boolean_laws_ok"] = laws_ok;
  out.violation |= !laws_ok;

  if (cfg.gamma) {
    const auto g = parse_gamma(*cfg.gamma);
    for (auto [a, b] : g)
      if (a >= fam.size() || b >= fam.size())
        throw InputError("Γ index outside the family of size " + std::to_string(fam.size()));
    const auto m = inner_bp(alg, fam, g);
    out.doc.section("Selected Γ").line("P_" + gamma_string(g) + ": " + report::describe_projection(alg, m));
    out.data["gamma"] = {{"gamma", gamma_json(g)}, {"matrix", io::to_json(m)}};
  }

  std::vector<std::pair<std::string, OperatorMatrix>> ops;
  if (cfg.ops.empty())
    for (const auto& [n, m] : alg.operators) ops.emplace_back(n, OperatorMatrix(m));
  for (const auto& ref : cfg.ops) ops.emplace_back(ref, resolve_operator(alg, ref));
  if (!ops.empty()) {
    auto& os = out.doc.section("Operators");
    report::Table ot{{"operator", "band projection", "verdict", "Γ"}, {}};
    json oj = json::array();
    for (const auto& [name, m] : ops) {
      const bool bp = is_band_projection_op(m);
      std::optional<GammaSet> g;
      if (bp) g = is_inner(alg, fam, m, cfg.cap);
      const std::string verdict = !bp ? "not a band projection" : g ? "inner" : "not inner";
      ot.rows.push_back({name, report::yes_no(bp), verdict, g ? gamma_string(*g) : "-"});
      oj.push_back({{"name", name},
                    {"band_projection", bp},
                    {"inner", bp ? json(g.has_value()) : json(nullptr)},
                    {"gamma", g ? gamma_json(*g) : json(nullptr)}});
    }
    os.table(ot);
    out.data["operators"] = oj;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report: every command on one algebra, as one document.

inline void append_sections(report::Document& into, const Outcome& from, const std::string& prefix) {
  for (auto sec : from.doc.sections) {
    sec.title = prefix + ": " + sec.title;
    into.sections.push_back(std::move(sec));
  }
}

inline Outcome cmd_report(const Algebra& alg, const RunConfig& cfg) {
  Outcome out;
  out.doc.title = alg.name();
  auto& ov = out.doc.section("Overview");
  if (!alg.description.empty()) ov.line(alg.description);
  ov.line("dimension " + std::to_string(alg.dim()));
  std::string basis;
  for (std::size_t i = 0; i < alg.dim(); ++i) basis += (i ? ", " : "") + alg.label(i);
  ov.line("basis: " + basis);
  ov.line("norm: " + std::string(to_string(alg.norm().kind)));
  ov.line("identity: " + identity_text(alg));

  RunConfig sub = cfg;
  sub.elements.clear();
  sub.ops.clear();
  sub.gamma.reset();
  sub.family.clear();

  auto run_part = [&](const char* label, Outcome (*fn)(const Algebra&, const RunConfig&)) {
    try {
      Outcome o = fn(alg, sub);
      append_sections(out.doc, o, label);
      out.data[label] = o.data;
      out.violation |= o.violation;
    } catch (const Inapplicable& e) {
      out.doc.section(std::string(label)).line(std::string("not applicable: ") + e.what());
      out.data[label] = nullptr;
    } catch (const CapExceeded& e) {
      out.doc.section(std::string(label)).line(std::string("skipped: ") + e.what());
      out.data[label] = nullptr;
    }
  };
  run_part("verify", cmd_verify);
  run_part("classify", cmd_classify);
  if (alg.has_identity()) {
    run_part("center", cmd_center);
    run_part("spectrum", cmd_spectrum);
  }
  bool has_family = false;
  {
    std::vector<Element> pool;
    for (const auto& [n, x] : alg.elements) pool.push_back(x);
    has_family = find_families(alg, pool).front().size() > 0;
  }
  if (has_family) run_part("inner", cmd_inner);
  return out;
}

// ---------------------------------------------------------------------------
// Driver

inline Algebra load_algebra(const RunConfig& cfg) {
  if (cfg.input && cfg.builtin) throw InputError("give either --input or --builtin, not both");
  if (cfg.builtin) return builtin(*cfg.builtin);
  if (cfg.input) return io::load_algebra_file(*cfg.input);
  throw InputError("no algebra given: use --input FILE, --builtin NAME or builtin:NAME");
}

inline Outcome dispatch(const Algebra& alg, const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::verify: return cmd_verify(alg, cfg);
    case Command::classify: return cmd_classify(alg, cfg);
    case Command::center: return cmd_center(alg, cfg);
    case Command::spectrum: return cmd_spectrum(alg, cfg);
    case Command::inner: return cmd_inner(alg, cfg);
    case Command::report: return cmd_report(alg, cfg);
  }
  throw InputError("unknown command");
}

inline void render(const Outcome& o, const std::string& algebra_name, Command cmd, Format f,
                   std::ostream& os) {
  switch (f) {
    case Format::text: report::render_text(o.doc, os); break;
    case Format::markdown: report::render_markdown(o.doc, os); break;
    case Format::json: {
      json j;
      j["command"] = to_string(cmd);
      j["algebra"] = algebra_name;
      j["violation"] = o.violation;
      j["result"] = o.data;
      os << j.dump(2) << "\n";
      break;
    }
  }
}

/// Runs a parsed configuration; returns the exit code.
inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == Command::report && !cfg.input && !cfg.builtin) {
      // Every builtin, in name order.
      bool violation = false;
      json all = json::array();
      bool first = true;
      for (const auto& name : builtin_names()) {
        const Algebra alg = builtin(name);
        const Outcome o = cmd_report(alg, cfg);
        violation |= o.violation;
        if (cfg.format == Format::json) {
          all.push_back({{"algebra", alg.name()}, {"violation", o.violation}, {"result", o.data}});
          continue;
        }
        if (!first) out << "\n";
        first = false;
        render(o, alg.name(), cfg.command, cfg.format, out);
      }
      if (cfg.format == Format::json)
        out << json({{"command", "report"}, {"violation", violation}, {"reports", all}}).dump(2) << "\n";
      return violation ? kExitViolation : kExitOk;
    }
    const Algebra alg = load_algebra(cfg);
    const Outcome o = dispatch(alg, cfg);
    render(o, alg.name(), cfg.command, cfg.format, out);
    return o.violation ? kExitViolation : kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Inapplicable& e) {
    err << "not applicable: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise --cap or LATTICEALG_CAP)\n";
    return kExitInput;
  } catch (const InvariantFailure& e) {
    err << "violation: " << e.what() << "\n";
    return kExitViolation;
  }
}

/// Parses arguments (without the program name) into a RunConfig.
/// Returns nullopt and sets `code` when parsing ends the run (help, errors).
inline std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                           std::ostream& err, int& code) {
  CLI::App app{"Finite-dimensional Banach lattice algebra lab", "latticealg"};
  std::string command, format = "text", gamma;
  std::vector<std::string> positional;
  std::optional<std::string> input, builtin_name;
  RunConfig cfg;
  std::string cap_text, grid_text;
  app.add_option("command", command, "verify|classify|center|spectrum|inner|report")->required();
  app.add_option("args", positional, "SOURCE (builtin:NAME or path) followed by element names");
  app.add_option("--input", input, "algebra file");
  app.add_option("--builtin", builtin_name, "builtin algebra name");
  app.add_option("--element", cfg.elements, "element name or inline [coords]")->allow_extra_args(false);
  app.add_option("--family", cfg.family, "family member name");
  app.add_option("--gamma", gamma, "index pairs, e.g. \"(0,0),(1,1)\"");
  app.add_option("--op", cfg.ops, "operator name or inline matrix")->allow_extra_args(false);
  app.add_option("--grid", grid_text, "grid resolution N: coordinates in {0, 1/N, ..., 1}");
  app.add_option("--format", format, "text|json|markdown");
  app.add_option("--cap", cap_text, "enumeration cap on |Λ|²");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    code = kExitOk;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitInput;
    return std::nullopt;
  }
  try {
    cfg.command = command_from_string(command);
    cfg.format = format_from_string(format);
    cfg.input = input;
    cfg.builtin = builtin_name;
    std::size_t start = 0;
    if (!positional.empty() && !input && !builtin_name) {
      const auto& src = positional[0];
      if (src.rfind("builtin:", 0) == 0) cfg.builtin = src.substr(8);
      else cfg.input = src;
      start = 1;
    }
    for (std::size_t i = start; i < positional.size(); ++i) cfg.elements.push_back(positional[i]);
    if (!gamma.empty()) cfg.gamma = gamma;
    if (!grid_text.empty()) cfg.grid = static_cast<unsigned>(parse_positive("--grid", grid_text));
    if (!cap_text.empty()) cfg.cap = parse_positive("--cap", cap_text);
    if (const char* env = std::getenv("LATTICEALG_CAP"); env && *env)
      cfg.cap = parse_positive("LATTICEALG_CAP", env);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitInput;
    return std::nullopt;
  }
  return cfg;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  const auto cfg = parse_args(args, out, err, code);
  if (!cfg) return code;
  return execute(*cfg, out, err);
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace latticealg::cli
