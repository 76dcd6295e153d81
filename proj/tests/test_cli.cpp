#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "majorlab/cli.hpp"
#include "majorlab/json_io.hpp"

using namespace majorlab;

namespace {

struct CliRun {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  const CliRun v = run({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
}

TEST(Cli, VerifyReportShape) {
  const CliRun r = run({"verify", "--suite", "thm-3.1", "--trials", "10", "--canonical"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["manifest"]["command"], "verify");
  EXPECT_EQ(j["manifest"]["seed"], 42);
  EXPECT_EQ(j["manifest"]["tool_version"], kToolVersion);
  EXPECT_FALSE(j["manifest"].contains("wall_time_s"));
  EXPECT_TRUE(run({"verify", "--suite", "thm-3.1", "--trials", "10"})
                  .json()["manifest"]
                  .contains("wall_time_s"));
}

TEST(Cli, VerifyCanonicalIsByteStable) {
  const std::vector<std::string> args{"verify", "--suite", "cor-3.3,prop-4.1", "--trials", "8",
                                      "--canonical"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.out, b.out);
  std::vector<std::string> jobs = args;
  jobs.insert(jobs.end(), {"--jobs", "3"});
  Json ja = a.json(), jb = run(jobs).json();
  ja["manifest"].erase("config");
  jb["manifest"].erase("config");
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(Cli, VerifyUsageErrors) {
  EXPECT_EQ(run({"verify", "--suite", "thm-9.9"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--trials", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--dims", "4,3"}).code, kExitUsage);
  EXPECT_EQ(run({"verify", "--kernels", "nope"}).code, kExitUsage);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("MAJORLAB_SEED", "99", 1);
  const Json env = run({"verify", "--suite", "thm-3.1", "--trials", "5", "--canonical"}).json();
  const Json flag =
      run({"verify", "--suite", "thm-3.1", "--trials", "5", "--canonical", "--seed", "3"}).json();
  ::setenv("MAJORLAB_SEED", "abc", 1);
  const CliRun bad = run({"verify", "--suite", "thm-3.1", "--trials", "5"});
  ::unsetenv("MAJORLAB_SEED");
  EXPECT_EQ(env["manifest"]["seed"], 99);
  EXPECT_EQ(flag["manifest"]["seed"], 3);
  EXPECT_EQ(bad.code, kExitUsage);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "majorlab_out.json";
  const CliRun r = run({"verify", "--suite", "thm-3.1", "--trials", "5", "--out", path});
  ASSERT_EQ(r.code, kExitOk);
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["manifest"]["result_paths"][0], path);
  std::remove(path.c_str());
  EXPECT_EQ(run({"verify", "--suite", "thm-3.1", "--trials", "5", "--out",
                 "/nonexistent-dir/x.json"})
                .code,
            kExitIo);
}

TEST(Cli, PauliScan) {
  const CliRun r = run({"explore", "pauli-scan", "--alpha", "1", "--beta", "0.5", "--c", "-0.3",
                     "--canonical"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json()["results"];
  EXPECT_EQ(j["violation"], true);
  EXPECT_EQ(run({"explore", "pauli-scan", "--c", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"explore", "pauli-scan", "--steps", "2"}).code, kExitUsage);
}

TEST(Cli, SearchIsDeterministic) {
  const std::vector<std::string> args{"explore", "remark-3.2", "--budget", "200", "--canonical"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["manifest"]["seed"], 7);
}

TEST(Cli, ComputeMean) {
  const std::string a = temp_file("a.json", R"({"rows":2,"cols":2,"data":[2,1,1,2]})");
  const CliRun r = run({"compute", "mean", "--kernel", "arithmetic", "--a", a, "--b", a});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json res = r.json()["results"];
  EXPECT_EQ(res["kernel"], "arithmetic");
  const Json m = res["result"];
  EXPECT_NEAR(m["data"][0][0].get<double>(), 2.0, 1e-14);
  EXPECT_NEAR(m["data"][1][0].get<double>(), 1.0, 1e-14);
  EXPECT_EQ(run({"compute", "mean", "--kernel", "arithmetic", "--a", a, "--b", "/no/such"}).code,
            kExitIo);
}

TEST(Cli, ComputeMajorizeAndCompound) {
  const std::string l = temp_file("l.json", "[2,1]"), r = temp_file("r.json", "[3,1]");
  const CliRun m = run({"compute", "majorize", "--lhs", l, "--rhs", r});
  ASSERT_EQ(m.code, kExitOk) << m.err;
  EXPECT_EQ(m.json()["results"]["verdict"], "holds");
  const CliRun f = run({"compute", "majorize", "--lhs", r, "--rhs", l});
  EXPECT_EQ(f.json()["results"]["verdict"], "fails");

  const std::string d = temp_file("d.json", R"({"rows":3,"cols":3,"data":[1,0,0,0,2,0,0,0,3]})");
  const CliRun c = run({"compute", "compound", "--k", "2", "--in", d});
  ASSERT_EQ(c.code, kExitOk) << c.err;
  const Json cm = c.json()["results"]["result"]["data"];
  // flat row-major [re, im] pairs of diag(2, 3, 6)
  EXPECT_NEAR(cm[0][0].get<double>(), 2.0, 1e-14);
  EXPECT_NEAR(cm[4][0].get<double>(), 3.0, 1e-14);
  EXPECT_NEAR(cm[8][0].get<double>(), 6.0, 1e-14);
}

TEST(Cli, MalformedInputNamesField) {
  const std::string bad = temp_file("bad.json", R"({"rows":2,"cols":2,"data":[1,2,3]})");
  const CliRun r = run({"compute", "compound", "--k", "1", "--in", bad});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("malformed input"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("in.data"), std::string::npos) << r.err;
  const std::string junk = temp_file("junk.json", "{not json");
  EXPECT_EQ(run({"compute", "compound", "--k", "1", "--in", junk}).code, kExitUsage);
}
