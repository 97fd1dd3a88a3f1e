#pragma once

// Builtin algebras, shipped as embedded copies of fixtures/*.json in the same
// format users write.

#include "latticealg/embedded_fixtures.hpp"
#include "latticealg/io.hpp"

#include <string>
#include <vector>

namespace latticealg {

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& f : fixtures::kEmbedded) names.emplace_back(f.name);
  return names;
}

inline std::string builtin_source(const std::string& name) {
  for (const auto& f : fixtures::kEmbedded)
    if (f.name == name) return std::string(f.json);
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown builtin '" + name + "' (known: " + known + ")");
}

inline Algebra builtin(const std::string& name) {
  return io::algebra_from_json(io::parse_text(builtin_source(name), "builtin:" + name), name);
}

}  // namespace latticealg
