#include "helpers.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace latticealg;
using io::json;

namespace {

std::string error_of(const std::string& text) {
  try {
    io::algebra_from_json(io::parse_text(text, "t.json"));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, EveryFixtureRoundTrips) {
  for (const auto& name : builtin_names()) {
    const auto a = builtin(name);
    const auto b = io::algebra_from_json(io::to_json(a));
    EXPECT_EQ(a.name(), b.name());
    EXPECT_EQ(a.tensor(), b.tensor());
    EXPECT_EQ(a.norm(), b.norm());
    EXPECT_EQ(a.identity(), b.identity());
    EXPECT_EQ(a.elements, b.elements);
    EXPECT_EQ(a.operators, b.operators);
    EXPECT_EQ(a.basis_labels, b.basis_labels);
    EXPECT_EQ(io::to_json(a), io::to_json(b));
  }
}

TEST(Io, FixtureFilesMatchEmbeddedCopies) {
  for (const auto& name : builtin_names()) {
    const auto a = io::load_algebra_file(std::string(LATTICEALG_FIXTURE_DIR) + "/" + name + ".json");
    EXPECT_EQ(io::to_json(a), io::to_json(builtin(name)));
  }
}

TEST(Io, MinimalFileWithDefaults) {
  const auto a = io::algebra_from_json(
      io::parse_text(R"({"dim": 2, "tensor": [[0,0,0,"1"],[1,1,1,"1"]], "elements": {}})", "m"), "mini");
  EXPECT_EQ(a.name(), "mini");
  EXPECT_EQ(a.norm().kind, NormKind::sup);
  EXPECT_FALSE(a.has_identity());
  EXPECT_EQ(a.label(1), "b1");
}

TEST(Io, IntegerCoordinatesAccepted) {
  const auto x = io::element_from_json(json::parse("[1, \"-2/4\", 3]"));
  EXPECT_EQ(x, (Element{1, Scalar(-1, 2), 3}));
  EXPECT_THROW(io::element_from_json(json::parse("[1.5]")), InputError);
}

TEST(Io, SyntaxErrorReportsLineAndColumn) {
  const auto msg = error_of("{\n  \"dim\": 2,\n  \"tensor\": [,]\n}");
  EXPECT_NE(msg.find("t.json:3:"), std::string::npos) << msg;
}

TEST(Io, StructuralErrors) {
  EXPECT_NE(error_of(R"({"tensor": []})").find("malformed"), std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 1, "tensor": [[0,0,0,"1"],[0,0,0,"2"]]})").find("duplicate"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 1, "tensor": [[0,0,0]]})").find("tensor entry"), std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 1, "tensor": [[0,0,1,"1"]]})").find("out of range"), std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 2, "tensor": [], "identity": ["1"]})").find("coordinates"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 1, "tensor": [], "norm": {"kind": "max"}})").find("norm kind"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 1, "tensor": [[0,0,0,"1/0"]]})").find("zero denominator"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"dim": 2, "tensor": [], "basis": ["a"]})").find("basis"), std::string::npos);
}

TEST(Io, MissingFile) { EXPECT_THROW(io::load_algebra_file("/nonexistent/x.json"), InputError); }

TEST(Io, UnknownBuiltin) { EXPECT_THROW(builtin("nope"), InputError); }
