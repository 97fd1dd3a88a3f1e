#pragma once

// JSON encoding of scalars, elements, operators and algebra files.
//
// Algebra file:
//   { "dim": n,
//     "tensor": [[i, j, k, "num/den"], ...],        0-based indices
//     "norm": {"kind": "sup"|"one"|"p"|"operator"|"lpsum", ...},
//     "elements": {"name": [coords...]},
//     "identity": [coords...] }                      optional
// Optional extras: "name", "description", "basis" (labels), "operators"
// (name -> row-major matrix).

#include "latticealg/algebra.hpp"
#include "latticealg/operators.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace latticealg::io {

using json = nlohmann::ordered_json;

inline json to_json(const Scalar& q) { return format_scalar(q); }

inline Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(mpz_class(j.dump()));
  throw InputError("expected a rational string \"num/den\", got " + j.dump());
}

inline json to_json(const Element& x) {
  json a = json::array();
  for (const auto& c : x.coords()) a.push_back(to_json(c));
  return a;
}

inline Element element_from_json(const json& j, std::optional<std::size_t> dim = {}) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  std::vector<Scalar> c;
  for (const auto& v : j) c.push_back(scalar_from_json(v));
  if (dim && c.size() != *dim)
    throw InputError("element has " + std::to_string(c.size()) + " coordinates, expected " +
                     std::to_string(*dim));
  return Element(std::move(c));
}

/// Row-major array of rows.
inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const OperatorMatrix& t) { return to_json(t.matrix()); }

inline Matrix matrix_from_json(const json& j, std::optional<std::size_t> dim = {}) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  if (dim && (rows != *dim || cols != *dim))
    throw InputError("operator must be " + std::to_string(*dim) + "x" + std::to_string(*dim));
  return m;
}

inline NormKind norm_kind_from_string(const std::string& s) {
  if (s == "sup") return NormKind::sup;
  if (s == "one") return NormKind::one;
  if (s == "p") return NormKind::p;
  if (s == "operator") return NormKind::op;
  if (s == "lpsum") return NormKind::lpsum;
  throw InputError("unknown norm kind '" + s + "'");
}

inline json to_json(const NormSpec& n) {
  json j;
  j["kind"] = to_string(n.kind);
  if (n.kind == NormKind::p || (n.kind == NormKind::lpsum && n.outer == NormKind::p))
    j["p"] = to_json(n.p);
  if (!n.weights.empty()) {
    json w = json::array();
    for (const auto& x : n.weights) w.push_back(to_json(x));
    j["weights"] = w;
  }
  if (n.kind == NormKind::op) {
    j["size"] = n.matrix_size;
    json units = json::array();
    for (const auto& cells : n.units) {
      json u = json::array();
      for (auto [r, c] : cells) u.push_back({r, c});
      units.push_back(u);
    }
    j["units"] = units;
  }
  if (n.kind == NormKind::lpsum) {
    j["outer"] = to_string(n.outer);
    json blocks = json::array();
    for (const auto& b : n.blocks) blocks.push_back({{"dim", b.dim}, {"norm", to_json(b.norm)}});
    j["blocks"] = blocks;
  }
  return j;
}

inline NormSpec norm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("norm must be an object with a kind");
  NormSpec n;
  n.kind = norm_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("p")) n.p = scalar_from_json(j.at("p"));
  if (j.contains("weights"))
    for (const auto& w : j.at("weights")) n.weights.push_back(scalar_from_json(w));
  if (n.kind == NormKind::p && !j.contains("p")) throw InputError("p-norm needs \"p\"");
  if (n.kind == NormKind::op) {
    n.matrix_size = j.at("size").get<std::size_t>();
    for (const auto& u : j.at("units")) {
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (const auto& cell : u) cells.emplace_back(cell.at(0).get<std::size_t>(), cell.at(1).get<std::size_t>());
      n.units.push_back(std::move(cells));
    }
  }
  if (n.kind == NormKind::lpsum) {
    n.outer = norm_kind_from_string(j.at("outer").get<std::string>());
    for (const auto& b : j.at("blocks"))
      n.blocks.push_back({b.at("dim").get<std::size_t>(), norm_from_json(b.at("norm"))});
  }
  return n;
}

inline Algebra algebra_from_json(const json& j, const std::string& fallback_name = "algebra") {
  try {
    if (!j.is_object()) throw InputError("algebra file must be a JSON object");
    const auto dim = j.at("dim").get<std::size_t>();
    std::map<TensorIndex, Scalar> tensor;
    for (const auto& entry : j.at("tensor")) {
      if (!entry.is_array() || entry.size() != 4)
        throw InputError("tensor entry must be [i, j, k, \"num/den\"], got " + entry.dump());
      const TensorIndex idx{entry[0].get<std::size_t>(), entry[1].get<std::size_t>(),
                            entry[2].get<std::size_t>()};
      if (tensor.count(idx)) throw InputError("duplicate tensor entry " + entry.dump());
      tensor[idx] = scalar_from_json(entry[3]);
    }
    const NormSpec norm = j.contains("norm") ? norm_from_json(j.at("norm")) : NormSpec{};
    std::optional<Element> identity;
    if (j.contains("identity") && !j.at("identity").is_null())
      identity = element_from_json(j.at("identity"), dim);
    Algebra a(j.value("name", fallback_name), dim, std::move(tensor), norm, std::move(identity));
    a.description = j.value("description", "");
    if (j.contains("basis"))
      for (const auto& l : j.at("basis")) a.basis_labels.push_back(l.get<std::string>());
    if (!a.basis_labels.empty() && a.basis_labels.size() != dim)
      throw InputError("basis label count does not match dim");
    if (j.contains("elements"))
      for (const auto& [name, v] : j.at("elements").items())
        a.elements[name] = element_from_json(v, dim);
    if (j.contains("operators"))
      for (const auto& [name, v] : j.at("operators").items())
        a.operators[name] = matrix_from_json(v, dim);
    return a;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed algebra file: ") + e.what());
  }
}

inline json to_json(const Algebra& a) {
  json j;
  j["name"] = a.name();
  if (!a.description.empty()) j["description"] = a.description;
  j["dim"] = a.dim();
  if (!a.basis_labels.empty()) j["basis"] = a.basis_labels;
  json t = json::array();
  for (const auto& [idx, c] : a.tensor()) {
    const auto [i, k, l] = idx;
    t.push_back({i, k, l, to_json(c)});
  }
  j["tensor"] = t;
  j["norm"] = to_json(a.norm());
  if (a.has_identity()) j["identity"] = to_json(a.e());
  json el = json::object();
  for (const auto& [n, x] : a.elements) el[n] = to_json(x);
  j["elements"] = el;
  if (!a.operators.empty()) {
    json ops = json::object();
    for (const auto& [n, m] : a.operators) ops[n] = to_json(m);
    j["operators"] = ops;
  }
  return j;
}

/// Parses JSON text, reporting syntax errors with line and column.
inline json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                     ": JSON syntax error");
  }
}

inline Algebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  auto stem = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return algebra_from_json(parse_text(ss.str(), path), stem);
}

}  // namespace latticealg::io
