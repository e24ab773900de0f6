#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "regma/cli.hpp"
#include "regma/matroid.hpp"

using namespace regma;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "regma_" + name; }

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream f(path);
  f << j.dump();
}

}  // namespace

TEST(Cli, SystolePetersen) {
  Outcome r = run({"systole", "builtin:petersen"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["value"], "1/3");
  EXPECT_EQ(j["status"], "ok");
}

TEST(Cli, SystoleWithWeights) {
  std::string w = temp_path("k4.w");
  std::ofstream(w) << "1 1 1 1 1 1\n";
  Outcome r = run({"systole", "builtin:k4", "--weights", w});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["value"], "1/2");
}

TEST(Cli, EmbedF13KleinBottle) {
  Outcome r = run({"embed", "builtin:f13", "--chi", "0", "--nonorientable"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["found"].get<bool>());
  EXPECT_EQ(j["chi"], 0);
  EXPECT_FALSE(j["orientable"].get<bool>());
}

TEST(Cli, EmbedK33SphereNotFound) {
  Outcome r = run({"embed", "builtin:k33", "--chi", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(json::parse(r.out)["found"].get<bool>());
}

TEST(Cli, VerifyTablesUpToSix) {
  Outcome r = run({"verify-tables", "--max-b", "6", "--max-d", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "ok");
  ASSERT_EQ(j["items"].size(), 12u);
  for (const auto& it : j["items"]) {
    EXPECT_EQ(it["status"], "ok");
    EXPECT_EQ(it["expected"], it["computed"]);
  }
  EXPECT_EQ(j["items"][5]["b"], 6);
  EXPECT_EQ(j["items"][5]["expected"], "1/3");
  EXPECT_EQ(j["items"][11]["d"], 6);
}

TEST(Cli, OutputIsDeterministic) {
  Outcome a = run({"cogirth", "cographic(builtin:k33)"});
  Outcome b = run({"cogirth", "cographic(builtin:k33)"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["value"], "4/9");
}

TEST(Cli, CertificatesRoundTrip) {
  std::string s = temp_path("sys.json"), c = temp_path("cog.json"), e = temp_path("emb.json"),
              i = temp_path("inv.json");
  ASSERT_EQ(run({"systole", "builtin:heawood", "--certificate", s}).code, 0);
  ASSERT_EQ(run({"cogirth", "r10", "--certificate", c}).code, 0);
  ASSERT_EQ(run({"embed", "builtin:k33", "--chi", "1", "--nonorientable", "--out", e}).code, 0);
  ASSERT_EQ(run({"involutions6", "graphic(builtin:k(7))", "--out", i}).code, 0);
  for (const auto& p : {s, c, e, i}) EXPECT_EQ(run({"--check", p}).code, 0) << p;

  json bad = read_json(s);
  bad["value"] = "1/3";
  write_json(s, bad);
  Outcome r = run({"--check", s});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["status"], "fail");

  bad = read_json(c);
  bad["witness"] = "00000";
  write_json(c, bad);
  EXPECT_EQ(run({"--check", c}).code, 1);

  bad = read_json(e);
  bad["chi"] = 2;
  write_json(e, bad);
  EXPECT_EQ(run({"--check", e}).code, 1);

  bad = read_json(i);
  bad["vectors"][1] = bad["vectors"][0];
  write_json(i, bad);
  EXPECT_EQ(run({"--check", i}).code, 1);
}

TEST(Cli, EmbedPinnedFace) {
  std::string e = temp_path("heawood.json");
  // 0-1-2-3-4-5 is a hexagon of the Heawood graph as built in the catalog
  Outcome r = run({"embed", "builtin:heawood", "--chi", "0", "--orientable", "--face", "0,1,2,3,4,5", "--out", e});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = read_json(e);
  EXPECT_EQ(j["pinned_face"].size(), 6u);
  EXPECT_EQ(run({"--check", e}).code, 0);
}

TEST(Cli, InvolutionsWithMultiplicities) {
  std::string w = temp_path("mult");
  std::ofstream(w) << "1 2 3 4 5 6 7 8 9 10\n";
  Outcome r = run({"involutions6", "r10", "--mult", w});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_TRUE(j["check"]["ok"].get<bool>());
  EXPECT_EQ(j["check"]["bound"], "110");
  EXPECT_EQ(j["vectors"].size(), 6u);
  EXPECT_EQ(j["counts"].size(), 11u);
}

TEST(Cli, GenCubicAndMatroidBuild) {
  Outcome g = run({"gen-cubic", "--n", "10"});
  ASSERT_EQ(g.code, 0);
  EXPECT_NE(g.err.find("19 graphs"), std::string::npos);
  Outcome t = run({"gen-cubic", "--n", "10", "--min-girth", "5"});
  EXPECT_NE(t.err.find("1 graphs"), std::string::npos);

  Outcome m = run({"matroid-build", "dual(r10)"});
  ASSERT_EQ(m.code, 0);
  std::istringstream in(m.out);
  BinaryMatroid parsed = parse_matroid(in);
  EXPECT_EQ(parsed.rank(), 5);
  EXPECT_EQ(parsed.size(), 10);
  EXPECT_TRUE(parsed.lift().has_value());
}

TEST(Cli, Reduce) {
  std::string p = temp_path("theta_pendant.g");
  // theta graph with a pendant path hanging off vertex 0
  std::ofstream(p) << "4 5\n0 1\n0 1\n0 1\n0 2\n2 3\n";
  Outcome r = run({"reduce", p});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["graph"]["n"], 2);
  EXPECT_EQ(j["graph"]["edges"].size(), 3u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"systole"}).code, 2);
  EXPECT_EQ(run({"systole", temp_path("missing")}).code, 2);
  EXPECT_EQ(run({"embed", "builtin:k4", "--chi", "2", "--orientable", "--nonorientable"}).code, 2);
  EXPECT_EQ(run({"involutions6", "graphic(builtin:k(8))"}).code, 2);
  EXPECT_EQ(run({"--check", temp_path("missing.json")}).code, 2);
  std::string junk = temp_path("junk.json");
  std::ofstream(junk) << "{\"kind\": \"teapot\"}";
  EXPECT_EQ(run({"--check", junk}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
