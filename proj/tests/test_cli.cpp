#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(TROPWEIL_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(TROPWEIL_DATA) + "/" + name; }

}  // namespace

TEST(Cli, Version) {
  auto r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.1.0"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("classes --d 0").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST(Cli, ClassesReportsDisplayDifference) {
  auto r = run("classes --d 1");
  EXPECT_EQ(r.code, 10);
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("command"), "classes");
  EXPECT_EQ(j.at("exit_code"), 10);
  EXPECT_EQ(j.at("d"), 1);
}

TEST(Cli, ChainCheck) {
  auto r = run("chain check " + data("triangle.json"));
  EXPECT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_FALSE(j.at("result").at("balanced").get<bool>());

  auto b = run("chain check " + data("balanced.json"));
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(json::parse(b.out).at("result").at("balanced").get<bool>());

  EXPECT_EQ(run("chain check /nonexistent.json").code, 2);  // rejected by argument validation
  std::string junk = ::testing::TempDir() + "junk.json";
  std::ofstream(junk) << "{\"d\": 1, \"cells\": 3}";
  EXPECT_EQ(run("chain check " + junk).code, 1);
}

TEST(Cli, SolveModWContradictsAndCertificateVerifies) {
  std::string report = ::testing::TempDir() + "solve_w.json";
  auto r = run("solve --d 1 --mod w -o " + report);
  EXPECT_EQ(r.code, 10);
  std::ifstream in(report);
  ASSERT_TRUE(in.good());
  auto j = json::parse(in);
  EXPECT_FALSE(j.at("certificate_hashes").empty());

  auto v = run("verify --d 1 --mod w --certificate " + report);
  EXPECT_EQ(v.code, 0);
}
