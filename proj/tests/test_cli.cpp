#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#ifndef CHARMOM_CLI
#define CHARMOM_CLI "charmom-cli"
#endif

using nlohmann::json;

namespace {
struct Run {
  int rc;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(CHARMOM_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t k = fread(buf, 1, sizeof buf, p)) out.append(buf, k);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}
}  // namespace

TEST(Cli, PolyHO) {
  auto r = run("poly --family ho --lambda 1 --params 1,0,1 --n 1");
  ASSERT_EQ(r.rc, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["reports"][0]["expansion"], json({{"(1)", "1"}, {"()", "1"}}));
  EXPECT_EQ(j["config"]["verb"], "poly");
  EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, MomentSymplectic) {
  auto r = run("moment --ensemble C --n 1 --m 1 --check ct");
  ASSERT_EQ(r.rc, 0);
  auto rep = json::parse(r.out)["reports"][0];
  EXPECT_EQ(rep["closed"]["literal"], "2");
  EXPECT_EQ(rep["oracle"]["value"], "2");
  EXPECT_EQ(rep["verdicts"]["literal"], "match");
  EXPECT_EQ(rep["verdicts"]["sign_adjusted"], "match");
}

TEST(Cli, VerifyBExpectedLiteralMismatch) {
  auto r = run("verify --ensemble B --n 1 --m 1");
  ASSERT_EQ(r.rc, 0);
  auto rep = json::parse(r.out)["reports"][0];
  EXPECT_EQ(rep["verdicts"]["literal"], "mismatch");
  EXPECT_EQ(rep["verdicts"]["sign_adjusted"], "match");
  EXPECT_TRUE(rep["expected_literal_mismatch"].get<bool>());
  EXPECT_TRUE(rep["pass"].get<bool>());
}

TEST(Cli, VerificationFailureExitsOne) {
  // k3 != 1: the standard dual map misses the oracle at m = 2
  auto r = run("verify --ensemble CI --n 1 --m 2 --methods quadrature");
  EXPECT_EQ(r.rc, 1);
  EXPECT_FALSE(json::parse(r.out)["reports"][0]["pass"].get<bool>());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").rc, 2);
  EXPECT_EQ(run("frobnicate").rc, 2);
  EXPECT_EQ(run("moment --ensemble C --bogus 1").rc, 2);
  EXPECT_EQ(run("moment --ensemble NOPE").rc, 2);
  EXPECT_EQ(run("poly --family ho --lambda 1 --params 1,0").rc, 2);
  EXPECT_EQ(run("moment --ensemble C --format xml").rc, 2);
}

TEST(Cli, SeedFixesMonteCarlo) {
  std::string a = "mc --ensemble CUE --n 2 --samples 5000 --thin 2 --burn-in 1000";
  auto r1 = run(a + " --seed 5"), r2 = run(a + " --seed 5"), r3 = run(a + " --seed 6");
  ASSERT_EQ(r1.rc, 0);
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_NE(json::parse(r1.out)["reports"][0]["mean"], json::parse(r3.out)["reports"][0]["mean"]);
}

TEST(Cli, CsvAndTable) {
  auto r = run("table");
  ASSERT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("label,k1,k2,k3,mult,rho,dual_k1,dual_k2,dual_k3,C,e"), std::string::npos);
  EXPECT_NE(r.out.find("\nBDI(0),0,0,1/2,"), std::string::npos);
  auto v = run("verify --ensemble D --n 1 --m 1 --format csv");
  EXPECT_NE(v.out.find("label,n,m,form,method,closed,oracle,abs_err,verdict"), std::string::npos);
  EXPECT_EQ(v.out.rfind("# config ", 0), 0u);
}

TEST(Cli, SzegoTable) {
  auto r = run("szego --ns 10,20,40");
  ASSERT_EQ(r.rc, 0);
  auto rep = json::parse(r.out)["reports"][0];
  EXPECT_NEAR(rep["rhs"].get<double>(), 4.0 / 3, 1e-12);
  EXPECT_TRUE(rep["gap_strictly_decreasing"].get<bool>());
}

TEST(Cli, OutputDirectoryOverride) {
  auto dir = std::filesystem::temp_directory_path() / "charmom_cli_test";
  std::filesystem::create_directories(dir);
  auto r = run("--out res.json table --format json", "CHARMOM_OUT_DIR=" + dir.string());
  ASSERT_EQ(r.rc, 0);
  std::ifstream f(dir / "res.json");
  ASSERT_TRUE(f.good());
  auto j = json::parse(f);
  EXPECT_EQ(j["reports"].size(), 12u);
  std::filesystem::remove_all(dir);
}
