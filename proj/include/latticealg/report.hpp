#pragma once

// Small document model shared by the CLI renderers: titled sections holding
// text lines and tables, rendered as plain text or markdown.

#include "latticealg/algebra.hpp"
#include "latticealg/operators.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace latticealg::report {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

using Block = std::variant<std::string, Table>;

struct Section {
  std::string title;
  std::vector<Block> blocks;

  Section& line(std::string s) {
    blocks.emplace_back(std::move(s));
    return *this;
  }
  Section& table(Table t) {
    blocks.emplace_back(std::move(t));
    return *this;
  }
};

struct Document {
  std::string title;
  std::vector<Section> sections;

  Section& section(std::string t) {
    sections.push_back({std::move(t), {}});
    return sections.back();
  }
};

/// "E11 + 1/2·E12"; "0" for the zero element.
inline std::string symbolic(const Algebra& alg, const Element& x) {
  std::string out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const Scalar& c = x[i];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (out.empty()) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    const Scalar mag = ::abs(c);
    if (mag != 1) out += format_scalar(mag) + "·";
    out += alg.label(i);
  }
  return out.empty() ? "0" : out;
}

/// "[1, 0, 1/2]"
inline std::string coords(const Element& x) {
  std::string out = "[";
  for (std::size_t i = 0; i < x.dim(); ++i) out += (i ? ", " : "") + format_scalar(x[i]);
  return out + "]";
}

/// Band projections are diagonal 0/1 matrices; describe by the kept atoms.
inline std::string describe_projection(const Algebra& alg, const OperatorMatrix& m) {
  if (!is_band_projection_op(m)) return "(not a band projection)";
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i)
    if (m(i, i) == 1) out += (out.empty() ? "" : ", ") + alg.label(i);
  return out.empty() ? "0" : "onto {" + out + "}";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

namespace detail {
// Display width in code points (UTF-8 continuation bytes do not count).
inline std::size_t width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}
inline std::string pad(const std::string& s, std::size_t w) {
  return s + std::string(w > width(s) ? w - width(s) : 0, ' ');
}
}  // namespace detail

inline void render_text(const Document& doc, std::ostream& os) {
  os << "== " << doc.title << " ==\n";
  for (const auto& sec : doc.sections) {
    os << "\n-- " << sec.title << "\n";
    for (const auto& b : sec.blocks) {
      if (const auto* s = std::get_if<std::string>(&b)) {
        os << *s << "\n";
        continue;
      }
      const auto& t = std::get<Table>(b);
      std::vector<std::size_t> w(t.header.size());
      for (std::size_t c = 0; c < t.header.size(); ++c) w[c] = detail::width(t.header[c]);
      for (const auto& r : t.rows)
        for (std::size_t c = 0; c < r.size() && c < w.size(); ++c)
          w[c] = std::max(w[c], detail::width(r[c]));
      auto emit = [&](const std::vector<std::string>& r) {
        std::string line;
        for (std::size_t c = 0; c < w.size(); ++c)
          line += (c ? "  " : "") + detail::pad(c < r.size() ? r[c] : "", w[c]);
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << "\n";
      };
      emit(t.header);
      std::vector<std::string> rule;
      for (auto x : w) rule.push_back(std::string(x, '-'));
      emit(rule);
      for (const auto& r : t.rows) emit(r);
    }
  }
}

inline std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

inline void render_markdown(const Document& doc, std::ostream& os, int level = 1) {
  const std::string h(static_cast<std::size_t>(level), '#');
  os << h << " " << doc.title << "\n";
  for (const auto& sec : doc.sections) {
    os << "\n" << h << "# " << sec.title << "\n\n";
    bool after_line = false;
    for (const auto& b : sec.blocks) {
      if (const auto* s = std::get_if<std::string>(&b)) {
        os << "- " << *s << "\n";
        after_line = true;
        continue;
      }
      const auto& t = std::get<Table>(b);
      os << (after_line ? "\n|" : "|");
      after_line = false;
      for (const auto& c : t.header) os << " " << md_escape(c) << " |";
      os << "\n|";
      for (std::size_t c = 0; c < t.header.size(); ++c) os << "---|";
      os << "\n";
      for (const auto& r : t.rows) {
        os << "|";
        for (const auto& c : r) os << " " << md_escape(c) << " |";
        os << "\n";
      }
      os << "\n";
    }
  }
}

}  // namespace latticealg::report
