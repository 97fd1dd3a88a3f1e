#include "helpers.hpp"

#include "latticealg/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace latticealg;
using io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("latticealg_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, VerifyUpperTriangular) {
  const auto r = run({"verify", "builtin:upper2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "identity: E11 + E22")) << r.out;
}

TEST(Cli, VerifyNegativeEntryExitsOne) {
  const auto path = temp_file("neg.json", R"({"dim": 2, "tensor": [[0,0,0,"1"],[0,1,1,"-1/2"]]})");
  const auto r = run({"verify", "--input", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "positivity")) << r.out;
  EXPECT_TRUE(has(r.out, "VIOLATED"));
  EXPECT_TRUE(has(r.out, "c[0,1,1]"));
}

TEST(Cli, VerifyNoIdentity) {
  const auto r = run({"verify", "--builtin", "noid3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "no identity"));
}

TEST(Cli, SyntaxErrorExitsTwoWithPosition) {
  const auto path = temp_file("bad.json", "{\n \"dim\": 2,\n \"tensor\": [[0,0,0,\"1\"]\n");
  const auto r = run({"verify", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, ":4:")) << r.err;
}

TEST(Cli, ClassifyUpperTriangular) {
  const auto r = run({"classify", "builtin:upper2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["order_idempotents"].size(), 4u);
  bool found = false;
  for (const auto& e : j["result"]["elements"])
    if (e["name"] == "p") {
      found = true;
      EXPECT_EQ(e["bp"], true);
      EXPECT_EQ(e["oi"], false);
    }
  EXPECT_TRUE(found);
}

TEST(Cli, ClassifyNoid3AndCk3) {
  const auto n = json::parse(run({"classify", "builtin:noid3", "--format", "json"}).out);
  EXPECT_EQ(n["result"]["left_and_right_band_projections"].size(), 4u);
  EXPECT_TRUE(n["result"]["order_idempotents"].is_null());
  const auto c = json::parse(run({"classify", "builtin:ck3", "--format", "json"}).out);
  EXPECT_EQ(c["result"]["order_idempotents"].size(), 8u);
  EXPECT_EQ(c["result"]["order_idempotents"].size(), c["result"]["band_projections_on_grid"].size());
}

TEST(Cli, SpectrumReflection) {
  const auto r = run({"spectrum", "builtin:m3-reflection", "p"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "-λ(λ+1)(λ-1)")) << r.out;
  EXPECT_TRUE(has(r.out, "{-1,0,1}"));
}

TEST(Cli, SpectrumWithoutIdentityIsInapplicable) {
  const auto r = run({"spectrum", "builtin:noid3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, "no identity"));
}

TEST(Cli, CenterUpperTriangular) {
  const auto r = run({"center", "builtin:upper2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "basis: {E11, E22}"));
  EXPECT_TRUE(has(r.out, "disjoint complement: {E12}"));
}

TEST(Cli, InnerNonInnerOperator) {
  const auto r = run({"inner", "builtin:noid3", "--op", "z-projection"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has(r.out, "not inner"));
  const auto j = json::parse(run({"inner", "builtin:noid3", "--format", "json"}).out);
  EXPECT_EQ(j["result"]["inner_projections"].size(), 4u);
  for (const auto& op : j["result"]["operators"])
    EXPECT_EQ(op["inner"], op["name"] != "z-projection");
}

TEST(Cli, InnerWithExplicitFamilyAndGamma) {
  const auto r = run({"inner", "builtin:regop2", "--family", "P1", "--family", "P2", "--gamma",
                      "(0,1),(1,0)", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["result"]["inner_projections"].size(), 16u);
  // P1 x P2 + P2 x P1 keeps the off-diagonal entries
  const auto m = io::matrix_from_json(j["result"]["gamma"]["matrix"]);
  EXPECT_EQ(OperatorMatrix(m), OperatorMatrix::diagonal({0, 1, 1, 0}));
}

TEST(Cli, InnerInvalidFamilyExitsOne) {
  const auto r = run({"inner", "builtin:upper2", "--family", "E11", "--family", "E12"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(has(r.out, "invalid family"));
}

TEST(Cli, CapFlagAndEnvironment) {
  EXPECT_EQ(run({"inner", "builtin:regop2", "--cap", "3"}).code, 2);
  EXPECT_EQ(run({"inner", "builtin:regop2", "--cap", "4"}).code, 0);
  EXPECT_EQ(run({"inner", "builtin:regop2", "--cap", "0"}).code, 2);
  ::setenv("LATTICEALG_CAP", "2", 1);
  const auto r = run({"inner", "builtin:regop2", "--cap", "16"});
  ::unsetenv("LATTICEALG_CAP");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(has(r.err, "cap"));
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"frobnicate", "builtin:upper2"}).code, 2);
  EXPECT_EQ(run({"verify", "builtin:nope"}).code, 2);
  EXPECT_EQ(run({"classify", "builtin:upper2", "--element", "missing"}).code, 2);
  EXPECT_EQ(run({"classify", "builtin:upper2", "--format", "yaml"}).code, 2);
  EXPECT_EQ(run({"classify", "builtin:upper2", "--grid", "x"}).code, 2);
  EXPECT_EQ(run({"inner", "builtin:noid3", "--op", "w-projection"}).code, 2);
  EXPECT_EQ(run({"inner", "builtin:noid3", "--gamma", "(0,5)"}).code, 2);
  EXPECT_EQ(run({"verify", "--input", "a.json", "--builtin", "upper2"}).code, 2);
  const auto r = run({"classify", "builtin:upper2", "--element", "missing"});
  EXPECT_TRUE(has(r.err, "known: E11, E12, E22, diag23, p")) << r.err;
}

TEST(Cli, InlineElement) {
  const auto r = run({"classify", "builtin:upper2", "--element", "[0, 7/3, 0]", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["result"]["elements"][0]["bp"], true);
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has(r.out, "--format"));
}

TEST(CliProperty, JsonOutputRoundTrips) {
  // Every element/matrix emitted as JSON parses back to the values the
  // library computes directly.
  for (const auto& name : builtin_names()) {
    const auto alg = builtin(name);
    for (const char* cmd : {"verify", "classify", "center", "spectrum", "inner"}) {
      const auto r = run({cmd, "builtin:" + name, "--format", "json"});
      if (r.code == 2) continue;  // not applicable to this algebra
      const auto j = json::parse(r.out);
      EXPECT_EQ(json::parse(j.dump()), j);
      EXPECT_EQ(j["algebra"], name);
      if (std::string(cmd) == "classify") {
        std::vector<Element> grid;
        for (const auto& x : j["result"]["band_projections_on_grid"]) grid.push_back(io::element_from_json(x));
        EXPECT_EQ(grid, search_band_projections(alg, GridSpec::uniform(2)));
      }
      if (std::string(cmd) == "spectrum")
        for (const auto& s : j["result"]["spectra"]) {
          const auto x = io::element_from_json(s["element"]);
          std::vector<Scalar> c;
          for (const auto& v : s["char_poly"]) c.push_back(io::scalar_from_json(v));
          EXPECT_EQ(Polynomial(c), spectrum(alg, x).char_poly);
        }
    }
  }
}

TEST(CliReport, DeterministicAndComplete) {
  const auto a = run({"report", "--format", "markdown"});
  const auto b = run({"report", "--format", "markdown"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  for (const auto& name : builtin_names()) EXPECT_TRUE(has(a.out, "# " + name + "\n")) << name;
}

TEST(CliReport, FixtureContents) {
  const auto up = run({"report", "builtin:upper2", "--format", "markdown"});
  EXPECT_TRUE(has(up.out, "Order idempotents (complete)"));
  EXPECT_TRUE(has(up.out, "| p | E12 | no | yes |"));
  const auto noid = run({"report", "builtin:noid3", "--format", "markdown"});
  EXPECT_TRUE(has(noid.out, "| z-projection | yes | not inner | - |"));
  const auto ck = run({"report", "builtin:ck3", "--format", "markdown"});
  EXPECT_TRUE(has(ck.out, "- 8 elements"));
  EXPECT_TRUE(has(ck.out, "- 8 grid points"));
}
