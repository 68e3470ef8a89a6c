#include "iwk/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace iwk;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "iwk");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, AdmJson) {
  const Result r = run({"--datum", "preset:GL2", "adm", "--mu", "1,0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_TRUE(doc.is_array());
  EXPECT_EQ(doc.size(), 3u);
  const auto d = preset("GL2");
  nlohmann::json ref = nlohmann::json::array();
  for (const auto& x : adm(d, parse_coweight(*d, "1,0")).elements) ref.push_back(element_to_json(x));
  EXPECT_EQ(doc, ref);
}

TEST(Cli, Presets) {
  const Result r = run({"presets", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NE(std::find(doc.begin(), doc.end(), "GL2"), doc.end());
}

TEST(Cli, UsageErrors) {
  const Result arity = run({"--datum", "preset:GL2", "adm", "--mu", "1"});
  EXPECT_EQ(arity.code, 2);
  EXPECT_EQ(arity.err.rfind("USAGE", 0), 0u);
  EXPECT_EQ(run({"--datum", "preset:GL2", "adm", "--mu", "1,0", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--datum", "preset:GL2", "adm"}).code, 2);
  EXPECT_EQ(run({"--datum", "preset:GL2", "tau", "--mu", "1,0", "--format", "dot"}).code, 2);
  EXPECT_EQ(run({"--datum", "preset:GL2", "strata", "--mu", "1,0", "--level", "K=7"}).code, 2);
  EXPECT_EQ(run({"--datum", "preset:GL2", "strata", "--mu", "1,0", "--level", "parahoric"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, ComputationErrors) {
  const Result nd = run({"--datum", "preset:GL2", "adm", "--mu", "0,1"});
  EXPECT_EQ(nd.code, 1);
  EXPECT_EQ(nd.err.rfind("NOT_DOMINANT", 0), 0u);
  const Result missing = run({"--datum", "preset:NOPE", "adm", "--mu", "1,0"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.err.rfind("DATUM_ERROR", 0), 0u);
  EXPECT_EQ(run({"--datum", "preset:GL2", "adm-k", "--mu", "1,0", "--level", "K=0,1"}).code, 1);
}

TEST(Cli, DatumFiles) {
  const std::string dir = IWK_DATUM_DIR;
  const Result a = run({"--datum", dir + "/gl2.json", "adm", "--mu", "1,0", "--format", "json"});
  const Result b = run({"--datum", "preset:GL2", "adm", "--mu", "1,0", "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Result c = run({"--datum", dir + "/gsp4-preset.json", "bgmu", "--mu", "1,1,1"});
  EXPECT_EQ(c.code, 0) << c.err;
}

TEST(Cli, WarnsWhenSigmaMovesMu) {
  const Result r = run({"--datum", "preset:ResE2-GL2", "bgmu", "--mu", "1,0,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, EveryCommandRoundTripsAndIsDeterministic) {
  const std::vector<std::vector<std::string>> cmds{
      {"adm", "--mu", "1,0,1,0"},
      {"adm-k", "--mu", "1,0,1,0", "--level", "very-special"},
      {"ekor", "--mu", "1,0,1,0", "--level", "K=1,3"},
      {"tau", "--mu", "1,0,1,0"},
      {"bgmu", "--mu", "1,0,1,0"},
      {"newton", "--trans", "1,0,0,0", "--fin", "1"},
      {"straight", "--mu", "1,0,1,0"},
      {"strata", "--mu", "1,0,1,0", "--level", "K=1,3"},
      {"components", "--mu", "1,0,1,0"},
      {"levi", "--mu", "1,0,1,0"},
      {"path", "--mu", "1,-1,1,-1", "--newton", "1/2,-1/2,1/2,-1/2"},
      {"poset", "--mu", "1,0,1,0"},
  };
  const auto d = preset("ResE2-GL2");
  for (const auto& c : cmds) {
    std::vector<std::string> args{"--datum", "preset:ResE2-GL2", "--format", "json"};
    args.insert(args.end(), c.begin(), c.end());
    const Result r1 = run(args);
    ASSERT_EQ(r1.code, 0) << c[0] << ": " << r1.err;
    args.insert(args.end(), {"--threads", "3"});
    const Result r2 = run(args);
    EXPECT_EQ(r1.out, r2.out) << c[0];
    EXPECT_TRUE(emit::round_trips(c[0], d, nlohmann::json::parse(r1.out))) << c[0];
  }
}

TEST(Cli, DotOutput) {
  const Result r = run({"--datum", "preset:GL2", "poset", "--mu", "1,0", "--format", "dot"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_NE(r.out.find("rank=same"), std::string::npos);
  EXPECT_NE(r.out.find("fillcolor"), std::string::npos);
}

TEST(Cli, OracleSuite) {
  const Result r = run({"--datum", "preset:GL2", "oracle", "--suite", "finite", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_TRUE(doc["mismatches"].empty());
  EXPECT_GT(doc["checked"].get<int>(), 0);
  EXPECT_EQ(run({"oracle", "--suite", "nope"}).code, 2);
}
