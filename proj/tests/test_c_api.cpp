// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/lyapinf.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace {

const std::string kData = LYAPINF_TEST_DATA_DIR;

struct Instance {
  lyapinf_instance* ptr = nullptr;
  ~Instance() { lyapinf_instance_free(ptr); }
};

struct Report {
  lyapinf_report* ptr = nullptr;
  ~Report() { lyapinf_report_free(ptr); }
};

TEST(CApi, CheckRunningExample) {
  Instance inst;
  ASSERT_EQ(lyapinf_instance_load_file((kData + "/running_example.json").c_str(), &inst.ptr), LYAPINF_OK);
  EXPECT_EQ(lyapinf_instance_dim(inst.ptr), 2u);
  Report rep;
  ASSERT_EQ(lyapinf_check(inst.ptr, nullptr, &rep.ptr), LYAPINF_OK);
  EXPECT_EQ(lyapinf_report_exit_code(rep.ptr), LYAPINF_EXIT_INFORMATIVE);
  EXPECT_STREQ(lyapinf_report_verdict(rep.ptr), "informative");
  double p[4];
  ASSERT_EQ(lyapinf_report_solution(rep.ptr, p, 2), LYAPINF_OK);
  const double expected[4] = {1, 1, -1, 0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(p[i], expected[i], 1e-9);
  EXPECT_NE(std::string(lyapinf_report_json(rep.ptr, -1)).find("\"verdict\":\"informative\""),
            std::string::npos);
  EXPECT_NE(std::string(lyapinf_report_text(rep.ptr)).find("P* ="), std::string::npos);
}

TEST(CApi, NotInformativeHasNoSolution) {
  Instance inst;
  ASSERT_EQ(lyapinf_instance_load_file((kData + "/data_only.json").c_str(), &inst.ptr),
            LYAPINF_OK);
  Report rep;
  ASSERT_EQ(lyapinf_check(inst.ptr, nullptr, &rep.ptr), LYAPINF_OK);
  EXPECT_EQ(lyapinf_report_exit_code(rep.ptr), LYAPINF_EXIT_NOT_INFORMATIVE);
  double p[4];
  EXPECT_EQ(lyapinf_report_solution(rep.ptr, p, 2), LYAPINF_ERR_NO_SOLUTION);
}

TEST(CApi, SolveWithMemberAndOptions) {
  Instance inst;
  ASSERT_EQ(lyapinf_instance_load_file((kData + "/running_example.json").c_str(), &inst.ptr), LYAPINF_OK);
  lyapinf_options opts;
  lyapinf_options_default(&opts);
  opts.has_seed = 1;
  opts.seed = 5;
  const double member[4] = {-1, 3, 0, -2};
  Report rep;
  ASSERT_EQ(lyapinf_solve(inst.ptr, &opts, member, &rep.ptr), LYAPINF_OK);
  ASSERT_EQ(lyapinf_report_exit_code(rep.ptr), LYAPINF_EXIT_INFORMATIVE);
  double p[4];
  ASSERT_EQ(lyapinf_report_solution(rep.ptr, p, 2), LYAPINF_OK);
  EXPECT_NEAR(p[1], 1.0, 1e-9);
  EXPECT_NEAR(p[2], -1.0, 1e-9);
}

TEST(CApi, VerifyTampered) {
  Instance inst;
  ASSERT_EQ(lyapinf_instance_load_file((kData + "/tampered.json").c_str(), &inst.ptr), LYAPINF_OK);
  Report rep;
  ASSERT_EQ(lyapinf_verify(inst.ptr, nullptr, &rep.ptr), LYAPINF_OK);
  EXPECT_EQ(lyapinf_report_exit_code(rep.ptr), LYAPINF_EXIT_INTEGRITY_FAILURE);
}

TEST(CApi, ParseErrorsSetLastError) {
  lyapinf_instance* inst = nullptr;
  EXPECT_EQ(lyapinf_instance_parse("{\"n\": 0}", "inline", &inst), LYAPINF_ERR_INPUT);
  EXPECT_EQ(inst, nullptr);
  EXPECT_NE(std::string(lyapinf_last_error()).find("inline:1: /n"), std::string::npos)
      << lyapinf_last_error();
  EXPECT_EQ(lyapinf_instance_load_file((kData + "/nope.json").c_str(), &inst), LYAPINF_ERR_IO);
  EXPECT_EQ(lyapinf_instance_load_file(nullptr, &inst), LYAPINF_ERR_INPUT);
  EXPECT_STREQ(lyapinf_status_string(LYAPINF_OK), "ok");
}

TEST(CApi, NullArguments) {
  Report rep;
  EXPECT_EQ(lyapinf_check(nullptr, nullptr, &rep.ptr), LYAPINF_ERR_INPUT);
  EXPECT_EQ(lyapinf_report_exit_code(nullptr), LYAPINF_EXIT_INPUT_ERROR);
  lyapinf_instance_free(nullptr);
  lyapinf_report_free(nullptr);
}

TEST(CApi, SimulateToMemory) {
  Report rep;
  ASSERT_EQ(lyapinf_simulate((kData + "/running_example.json").c_str(), nullptr, &rep.ptr), LYAPINF_OK);
  EXPECT_EQ(lyapinf_report_exit_code(rep.ptr), 0);
  const std::string doc = lyapinf_report_json(rep.ptr, 2);
  Instance inst;
  ASSERT_EQ(lyapinf_instance_parse(doc.c_str(), "simulated", &inst.ptr), LYAPINF_OK)
      << lyapinf_last_error();
}

TEST(CApi, SolveLyapunovKernel) {
  const double a[4] = {-1, 1, 0, -2};
  const double q[4] = {2, 3, -3, 0};
  double p[4];
  ASSERT_EQ(lyapinf_solve_lyapunov(a, q, 2, 1e-8, p), LYAPINF_OK);
  const double expected[4] = {1, 1, -1, 0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(p[i], expected[i], 1e-12);
  const double singular[4] = {1, 0, 0, -1};
  EXPECT_EQ(lyapinf_solve_lyapunov(singular, q, 2, 1e-8, p), LYAPINF_ERR_PRECONDITION);
}

TEST(CApi, SpectralGap) {
  const double a[4] = {-1, 1, 0, -2};
  double gap = 0;
  ASSERT_EQ(lyapinf_spectral_gap(a, 2, &gap), LYAPINF_OK);
  EXPECT_NEAR(gap, 2.0, 1e-12);
  const double bad[1] = {NAN};
  EXPECT_NE(lyapinf_spectral_gap(bad, 1, &gap), LYAPINF_OK);
}

}  // namespace
