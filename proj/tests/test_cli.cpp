#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "arrmono/cli.hpp"

using arrmono::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  Json json;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = arrmono::cli::run(args, out, err);
  o.out = out.str();
  try {
    o.json = Json::parse(o.out);
  } catch (const std::exception&) {
    o.json = nullptr;
  }
  return o;
}

std::string r12_path() { return std::string(ARRMONO_DATA_DIR) + "/r12.json"; }

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, PolygonModelForSix) {
  auto o = run({"polygon", "--n", "6"});
  ASSERT_EQ(o.code, 0);
  const auto& r = o.json.at("result");
  EXPECT_EQ(r.at("wiring").at("verticals").size(), 5u);
  EXPECT_EQ(r.at("wiring").at("verticals")[0].at("blocks"), Json::parse("[[1],[2,3],[4,5],[6]]"));
  EXPECT_EQ(r.at("wiring").at("verticals")[1].at("blocks"), Json::parse("[[1,2],[3,4],[5,6]]"));
  EXPECT_EQ(r.at("labeling").at("infinity"), "d5");
  EXPECT_EQ(o.json.at("verb"), "polygon");
  EXPECT_EQ(o.json.at("input_digest").get<std::string>().size(), 64u);
}

TEST(Cli, MembershipFromModelFile) {
  auto o = run({"membership", "--arrangement", r12_path(), "--point", "pnk:6:1"});
  ASSERT_EQ(o.code, 0) << o.out;
  const auto& r = o.json.at("result");
  EXPECT_EQ(r.at("rank"), 4);
  EXPECT_EQ(r.at("h1"), 1);
  EXPECT_EQ(r.at("in_variety"), true);
}

TEST(Cli, StoredModelMatchesFreshModel) {
  auto fresh = run({"polygon", "--n", "6"});
  std::ifstream in(r12_path());
  EXPECT_EQ(Json::parse(in), fresh.json.at("result"));
}

TEST(Cli, OracleCheckOnRandomWirings) {
  auto o = run({"oracle-check", "--arrangement", "random", "--seed", "7", "--count", "20"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.json.at("result").at("all_equal"), true);
  EXPECT_EQ(o.json.at("result").at("arrangements").size(), 20u);
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::vector<std::string> args{"certify", "--n", "7"};
  auto a = run(args);
  auto b = run(args);
  auto c = run({"certify", "--n", "7", "--jobs", "4"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  for (const auto& cert : a.json.at("result").at("certificates")) EXPECT_EQ(cert.at("certified"), true);
}

TEST(Cli, DigestTracksInputs) {
  auto a = run({"validate", "--arrangement", "random", "--seed", "1"});
  auto b = run({"validate", "--arrangement", "random", "--seed", "2"});
  EXPECT_NE(a.json.at("input_digest"), b.json.at("input_digest"));
  const std::string p = temp_file("arrmono_digest.json", R"({"wiring":{"n":2,"verticals":[{"label":"p","blocks":[[1,2]]}]}})");
  auto c = run({"wiring", "--arrangement", p});
  temp_file("arrmono_digest.json", R"({"wiring":{"n":3,"verticals":[{"label":"p","blocks":[[1,2],[3]]}]}})");
  auto d = run({"wiring", "--arrangement", p});
  ASSERT_EQ(c.code, 0);
  ASSERT_EQ(d.code, 0);
  EXPECT_NE(c.json.at("input_digest"), d.json.at("input_digest"));
}

TEST(Cli, ValidateRandomArrangement) {
  auto o = run({"validate", "--arrangement", "random", "--seed", "3", "--n", "5"});
  ASSERT_EQ(o.code, 0);
  const auto& r = o.json.at("result");
  EXPECT_EQ(r.at("euler_characteristic"), r.at("expected_euler_characteristic"));
}

TEST(Cli, TransportWithOracle) {
  auto o = run({"transport", "--arrangement", "polygon:5", "--from", "0", "--to", "3", "--oracle"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.json.at("result").at("fox_oracle_agrees"), true);
  EXPECT_EQ(o.json.at("result").at("matrix").at("basis"), "alpha_{i,i+1}");
}

TEST(Cli, CharPolyAndMonodromy) {
  auto o = run({"charpoly", "--arrangement", "polygon:7", "--vertical", "1", "--point", "cyclo:9:2"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.json.at("result").at("matches_matrix"), true);
  EXPECT_EQ(o.json.at("result").at("degree"), 6);
  auto m = run({"monodromy", "--arrangement", "polygon:5", "--vertical", "d1", "--form", "delta"});
  ASSERT_EQ(m.code, 0) << m.out;
  EXPECT_EQ(m.json.at("result").at("matrix").at("rows"), 4);
}

TEST(Cli, EigenvectorAndBoundary) {
  auto e = run({"eigenvector", "--arrangement", "polygon:8", "--point", "pnk:8:2"});
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(e.json.at("result").at("dimension"), 1);
  auto b = run({"boundary", "--arrangement", "polygon:6", "--point", "pnk:6:1"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(b.json.at("result").at("rank"), 4);
  EXPECT_EQ(b.json.at("result").at("blocks").size(), 5u);
}

TEST(Cli, ComponentOrbitAndLemma) {
  auto c = run({"component-sample", "--n", "8", "--x", "cyclo:12:1"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.json.at("result").at("membership").at("h1"), 1);
  auto o = run({"orbit", "--n", "8", "--point", "component:8:rat:3/2"});
  ASSERT_EQ(o.code, 0) << o.out;
  EXPECT_EQ(o.json.at("result").at("h1_constant"), true);
  auto l = run({"lemma-check", "--n", "5"});
  ASSERT_EQ(l.code, 0);
  EXPECT_EQ(l.json.at("result").at("passed"), true);
  auto p = run({"pnk", "--n", "8", "--k", "2"});
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(p.json.at("result").at("v_n")[3].at("coeffs")[0], "0/1");
}

TEST(Cli, DomainErrorsExitTwo) {
  auto o = run({"membership", "--arrangement", "polygon:6", "--point", "rat:1"});
  EXPECT_EQ(o.code, 2);
  EXPECT_EQ(o.json.at("error").at("kind"), "UnsupportedStratum");
  const std::string p = temp_file("arrmono_nf.json", R"({"horizontals":[{"label":"a","a":"0","b":"0"},{"label":"b","a":"1","b":"-1"}],"verticals":[{"label":"v","p":"0"}]})");
  auto nf = run({"validate", "--arrangement", p});
  EXPECT_EQ(nf.code, 2);
  EXPECT_EQ(nf.json.at("error").at("kind"), "NotFibered");
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"polygon"}).code, 1);
  auto bad_point = run({"membership", "--arrangement", "polygon:6", "--point", "pnk:6"});
  EXPECT_EQ(bad_point.code, 1);
  EXPECT_EQ(bad_point.json.at("error").at("kind"), "Parse");
  EXPECT_EQ(run({"validate", "--arrangement", "/nonexistent/file.json"}).code, 1);
  EXPECT_EQ(run({"membership", "--arrangement", "polygon:6", "--point", "pnk:7:1"}).code, 1);
  EXPECT_EQ(run({"polygon", "--n", "6", "--format", "xml"}).code, 1);
}

TEST(Cli, TableAndTiming) {
  auto t = run({"membership", "--arrangement", "polygon:5", "--point", "pnk:5:1", "--format", "table"});
  ASSERT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("h1: 1"), std::string::npos);
  auto j = run({"pnk", "--n", "5", "--k", "1", "--timing"});
  EXPECT_TRUE(j.json.contains("timing"));
  EXPECT_FALSE(run({"pnk", "--n", "5", "--k", "1"}).json.contains("timing"));
}
