// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors
//
// Runs the lyapinf executable and checks the exit-code contract end to end.

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = LYAPINF_CLI_PATH;
const std::string kData = LYAPINF_TEST_DATA_DIR;

struct CliRun {
  int exit_code = -1;
  std::string out;  // stdout and stderr, interleaved
};

CliRun run(const std::string& args) {
  const std::string cmd = "\"" + kCli + "\" " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return "\"" + kData + "/" + name + "\""; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lyapinf_test_cli_" + name);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("check " + data("running_example.json")).exit_code, 0);
  EXPECT_EQ(run("check " + data("malformed_q.json")).exit_code, 1);
  EXPECT_EQ(run("check " + data("data_only.json")).exit_code, 2);
  EXPECT_EQ(run("check " + data("contradictory_prior.json")).exit_code, 3);
  EXPECT_EQ(run("verify " + data("tampered.json")).exit_code, 4);
}

TEST(Cli, UsageErrorsAreExit1) {
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
  EXPECT_EQ(run("check").exit_code, 1);
  EXPECT_EQ(run("check " + data("running_example.json") + " --tol-rank -1").exit_code, 1);
  EXPECT_EQ(run("solve " + data("running_example.json") + " --member '[[1'").exit_code, 1);
}

TEST(Cli, MalformedInputNamesTheLine) {
  const CliRun r = run("check " + data("malformed_q.json"));
  EXPECT_NE(r.out.find("malformed_q.json:3: /Q"), std::string::npos) << r.out;
}

TEST(Cli, TextReportShowsSolution) {
  const CliRun r = run("solve " + data("running_example.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_NE(r.out.find("P* ="), std::string::npos) << r.out;
}

TEST(Cli, JsonReportParses) {
  const CliRun r = run("check --json " + data("running_example.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "informative");
  EXPECT_EQ(j["exit_code"], 0);
  EXPECT_EQ(j["command"], "check");
}

TEST(Cli, MemberAndReducedSolve) {
  CliRun r = run("solve --json --member '[[-1, 2], [0, -2]]' " + data("running_example.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["method"], "member");
  r = run("solve --json --reduced " + data("subspace_action.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["reduced"]["unknowns"], 4);
}

TEST(Cli, ReportFilesAreByteIdenticalAcrossRuns) {
  const auto a = temp_file("a.json");
  const auto b = temp_file("b.json");
  for (const char* name : {"running_example.json", "data_only.json"}) {
    ASSERT_EQ(run("verify --seed 9 --report \"" + a.string() + "\" " + data(name)).exit_code, 0);
    ASSERT_EQ(run("verify --seed 9 --report \"" + b.string() + "\" " + data(name)).exit_code, 0);
    const std::string first = slurp(a);
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, slurp(b)) << name;
  }
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(Cli, SimulateThenCheck) {
  const auto out = temp_file("sim.json");
  const CliRun sim = run("simulate " + data("running_example.json") + " \"" + out.string() + "\"");
  ASSERT_EQ(sim.exit_code, 0) << sim.out;
  const CliRun chk = run("check --json \"" + out.string() + "\"");
  ASSERT_EQ(chk.exit_code, 0) << chk.out;
  EXPECT_EQ(nlohmann::json::parse(chk.out)["verdict"], "informative");
  std::filesystem::remove(out);
}

TEST(Cli, SimulateToStdout) {
  const CliRun r = run("simulate " + data("running_example.json"));
  ASSERT_EQ(r.exit_code, 0) << r.out;
  EXPECT_TRUE(nlohmann::json::parse(r.out).contains("dataset"));
}

}  // namespace
