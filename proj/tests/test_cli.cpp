#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "singlip/cli.hpp"

using namespace singlip;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(std::move(args), in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string data(const std::string& name) { return std::string(SINGLIP_DATA_DIR) + "/" + name; }

std::string golden(const std::string& name) {
  std::ifstream f(std::string(SINGLIP_GOLDEN_DIR) + "/" + name);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, LneMinimal9) {
  auto r = run({"lne", data("minimal9.graph")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "LNE (rational, minimal)\n");
  EXPECT_EQ(r.err, "");
}

TEST(Cli, LneOtherVerdicts) {
  EXPECT_EQ(run({"lne", data("e8.graph")}).out, "NotLNE (rational, not minimal)\n");
  EXPECT_EQ(run({"lne", data("elliptic.graph")}).out, "Unknown (not rational)\n");
}

TEST(Cli, ZminE8) {
  auto r = run({"zmin", data("e8.graph")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "order e1 e2 e3 e4 e5 e6 e7 e8\nzmin 2 3 4 6 5 4 3 2\n");
}

TEST(Cli, ZminTraceAndOracle) {
  auto r = run({"zmin", data("e8.graph"), "--trace", "--oracle"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("oracle agrees\nstep\tvertex\tpairing\n1\te4\t1\n"), std::string::npos) << r.out;
  EXPECT_EQ(count(r.out, "\n"), 2u + 1u + 1u + 21u);
}

TEST(Cli, OracleBoundFromEnvironment) {
  ::setenv("SINGLIP_ORACLE_BOUND", "0", 1);
  auto bad = run({"zmin", data("a2.graph"), "--oracle"});
  ::setenv("SINGLIP_ORACLE_BOUND", "3", 1);
  auto good = run({"zmin", data("e8.graph"), "--oracle"});
  ::unsetenv("SINGLIP_ORACLE_BOUND");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.err.rfind("error[usage]:", 0), 0u) << bad.err;
  EXPECT_EQ(good.code, 0);
  EXPECT_NE(good.out.find("oracle agrees"), std::string::npos);
}

TEST(Cli, SmallQueries) {
  EXPECT_EQ(run({"rational", data("e8.graph")}).out, "true\n");
  EXPECT_EQ(run({"rational", data("elliptic.graph")}).out, "false\n");
  EXPECT_EQ(run({"minimal", data("minimal9.graph")}).out, "true\n");
  EXPECT_EQ(run({"minimal", data("e8.graph")}).out, "false\n");
  EXPECT_EQ(run({"multiplicity", data("minimal9.graph")}).out, "6\n");
  EXPECT_EQ(run({"lnodes", data("minimal9.graph")}).out, "v1 v4 v6 b3\n");
  EXPECT_EQ(run({"central", data("minimal9.graph")}).out, "edges v2-v3\nvertices v5 b1\n");
  EXPECT_EQ(run({"validate", data("a2.graph")}).out, "ok 2 vertices 1 edges\n");
  EXPECT_EQ(run({"arrows", data("a2.graph")}).out, "a 1\nb 1\n");
  EXPECT_EQ(run({"svalues", data("a2.graph")}).out, "a 1\nb 1\n");
}

TEST(Cli, RatesMinimal9) {
  EXPECT_EQ(run({"rates", data("minimal9.graph")}).out,
            "v1 1 L,P\nv3 2 junction\nv4 1 L\nv5 2 P\nv6 1 L\nb1 3 P\nb3 1 L\nbu1 5/2 P\n");
}

TEST(Cli, GoldenOutputs) {
  EXPECT_EQ(run({"polar", data("minimal9.graph")}).out, golden("minimal9_polar.txt"));
  EXPECT_EQ(run({"decomposition", data("minimal9.graph")}).out, golden("minimal9_decomposition.txt"));
  EXPECT_EQ(run({"discriminant", data("minimal9.graph")}).out, golden("minimal9_discriminant.txt"));
  EXPECT_EQ(run({"discriminant", data("minimal9.graph"), "--format", "dot"}).out,
            golden("minimal9_discriminant.dot"));
  EXPECT_EQ(run({"rates", data("minimal9.graph"), "--format", "dot"}).out, golden("minimal9_gamma0.dot"));
}

TEST(Cli, DotConventions) {
  auto g0 = run({"rates", data("minimal9.graph"), "--format", "dot"}).out;
  EXPECT_EQ(g0.rfind("graph ", 0), 0u);
  EXPECT_EQ(count(g0, "fillcolor=black"), 4u);
  EXPECT_EQ(count(g0, "fillcolor=gray"), 1u);
  EXPECT_EQ(count(g0, "<<I>5/2</I>>"), 1u);
  EXPECT_EQ(count(g0, "<<I>1</I>>"), 4u);
  EXPECT_EQ(count(g0, "->"), 0u);

  auto disc = run({"discriminant", data("minimal9.graph"), "--format", "dot"}).out;
  EXPECT_EQ(count(disc, "shape=point"), 9u);
  EXPECT_EQ(count(disc, "dir=forward"), 9u);

  auto one = run({"validate", "-", "--format", "dot"}, "vertex a weight=-2\n").out;
  EXPECT_EQ(count(one, "\"a\""), 1u);
  EXPECT_EQ(count(one, "--"), 0u);
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& cmd : {"zmin", "polar", "rates", "decomposition", "discriminant"}) {
    for (const auto& fmt : {"text", "json"}) {
      auto a = run({cmd, data("minimal9.graph"), "--format", fmt});
      auto b = run({cmd, data("minimal9.json"), "--format", fmt});
      EXPECT_EQ(a.code, 0);
      EXPECT_EQ(a.out, b.out) << cmd << " " << fmt;
      EXPECT_EQ(a.out, run({cmd, data("minimal9.graph"), "--format", fmt}).out);
    }
  }
}

TEST(Cli, JsonMatchesText) {
  auto j = nlohmann::json::parse(run({"rates", data("minimal9.graph"), "--format", "json"}).out);
  std::map<std::string, std::string> rates;
  for (const auto& v : j["vertices"])
    if (v["node"].get<bool>()) rates[v["id"].get<std::string>()] = v["rate"].get<std::string>();
  EXPECT_EQ(rates, (std::map<std::string, std::string>{{"v1", "1"},
                                                        {"v3", "2"},
                                                        {"v4", "1"},
                                                        {"v5", "2"},
                                                        {"v6", "1"},
                                                        {"b1", "3"},
                                                        {"b3", "1"},
                                                        {"bu1", "5/2"}}));

  auto z = nlohmann::json::parse(run({"zmin", data("e8.graph"), "--format", "json", "--trace"}).out);
  EXPECT_EQ(z["zmin"]["e4"], 6);
  EXPECT_EQ(z["trace"].size(), 21u);

  auto lne = nlohmann::json::parse(run({"lne", data("e8.graph"), "--format", "json"}).out);
  EXPECT_EQ(lne["verdict"], "NotLNE");
}

TEST(Cli, Stdin) {
  auto r = run({"zmin", "-"}, "vertex a weight=-2\nvertex b weight=-2\nedge a b\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "order a b\nzmin 1 1\n");
  auto j = run({"zmin", "-"}, R"({"vertices": [{"id": "a", "weight": -2}], "edges": []})");
  EXPECT_EQ(j.out, "order a\nzmin 1\n");
}

TEST(Cli, SmoothPointHasNoDiscriminant) {
  auto r = run({"discriminant", "-"}, "vertex a weight=-1\n");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error[invalid-value]: ", 0), 0u) << r.err;
  EXPECT_EQ(run({"lne", "-"}, "vertex a weight=-1\n").out, "LNE (rational, minimal)\n");
}

TEST(Cli, BranchCommands) {
  EXPECT_EQ(run({"contact", data("minimal9_discriminant.branches"), "D4a", "D5"}).out, "2\n");
  EXPECT_EQ(run({"contact", data("minimal9_discriminant.branches"), "D3a", "D3b"}).out, "2\n");
  EXPECT_EQ(run({"resolve", data("cusp.branches")}).out,
            "t0 rate=1 root node\nt1 rate=2 free t0\nt2 rate=3 free t1\nt3 rate=5/2 satellite t1 t2 node arrows c\n"
            "edge t0 t1\nedge t1 t3\nedge t2 t3\npiece B(1) t0\npiece B(5/2) t3\npiece A(1,5/2) t0 t3\n");
  auto r = run({"contact", data("cusp.branches"), "c", "zz"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("error[unknown-branch]:", 0), 0u) << r.err;
}

TEST(Cli, Errors) {
  auto missing = run({"rates", "missing.graph"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_EQ(missing.err.rfind("error[io]: ", 0), 0u) << missing.err;
  EXPECT_EQ(missing.out, "");

  auto not_minimal = run({"lnodes", data("e8.graph")});
  EXPECT_EQ(not_minimal.code, 1);
  EXPECT_EQ(not_minimal.err.rfind("error[not-minimal]: ", 0), 0u) << not_minimal.err;

  auto not_rational = run({"multiplicity", data("elliptic.graph")});
  EXPECT_EQ(not_rational.code, 1);
  EXPECT_EQ(not_rational.err.rfind("error[not-rational]: ", 0), 0u) << not_rational.err;

  auto syntax = run({"validate", "-"}, "vertex a weight=oops\n");
  EXPECT_EQ(syntax.code, 2);
  EXPECT_EQ(syntax.err.rfind("error[syntax]: ", 0), 0u) << syntax.err;

  auto definite = run({"validate", "-"}, "vertex a weight=-1\nvertex b weight=-1\nedge a b\n");
  EXPECT_EQ(definite.code, 2);
  EXPECT_EQ(definite.err.rfind("error[not-negative-definite]: ", 0), 0u) << definite.err;

  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate", "x"}).code, 2);
  EXPECT_EQ(run({"zmin", data("a2.graph"), "--format", "yaml"}).code, 2);
  auto fmt = run({"lne", data("a2.graph"), "--format", "dot"});
  EXPECT_EQ(fmt.code, 2);
  EXPECT_EQ(fmt.err.rfind("error[usage]: ", 0), 0u) << fmt.err;
}
