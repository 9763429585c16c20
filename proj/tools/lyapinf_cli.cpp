// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors
//
// Command-line front end over the C API.

#include "lyapinf/lyapinf.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Flags {
  std::string instance;
  std::optional<double> rank_tol;
  std::optional<double> gap_tol;
  std::optional<double> agree_tol;
  std::optional<std::uint64_t> seed;
  int samples = 32;
  bool reduced = false;
  bool json = false;
  std::string report_path;
  std::string member;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("instance", f.instance, "problem instance JSON file")->required();
  cmd->add_option("--tol-rank", f.rank_tol, "relative rank tolerance (default 1e-9)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-gap", f.gap_tol, "spectral gap tolerance (default 1e-8)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-agree", f.agree_tol, "oracle agreement tolerance (default 1e-6)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "random seed (default: instance seed or 0)");
  cmd->add_option("--samples", f.samples, "oracle sample count")
      ->check(CLI::Range(2, 1 << 20));
  cmd->add_flag("--json", f.json, "print the machine-readable JSON report");
  cmd->add_option("--report", f.report_path, "also write the JSON report to this file");
}

lyapinf_options to_options(const Flags& f) {
  lyapinf_options o;
  lyapinf_options_default(&o);
  if (f.rank_tol) o.rank_tol = *f.rank_tol;
  if (f.gap_tol) o.gap_tol = *f.gap_tol;
  if (f.agree_tol) o.agree_tol = *f.agree_tol;
  if (f.seed) {
    o.has_seed = 1;
    o.seed = *f.seed;
  }
  o.samples = f.samples;
  o.reduced = f.reduced ? 1 : 0;
  return o;
}

int fail_status(lyapinf_status status) {
  std::cerr << "error: " << lyapinf_status_string(status) << ": " << lyapinf_last_error()
            << "\n";
  return LYAPINF_EXIT_INPUT_ERROR;
}

// Prints the report and returns its exit code.
int emit(lyapinf_report* report, const Flags& f) {
  const int code = lyapinf_report_exit_code(report);
  const std::string json_text = std::string(lyapinf_report_json(report, 2)) + "\n";
  if (f.json) {
    std::cout << json_text;
  } else {
    std::cout << lyapinf_report_text(report);
  }
  if (code == LYAPINF_EXIT_INPUT_ERROR && !f.json) {
    std::cerr << lyapinf_last_error() << "\n";
  }
  if (!f.report_path.empty()) {
    std::ofstream out(f.report_path, std::ios::binary | std::ios::trunc);
    out << json_text;
    if (!out) {
      std::cerr << "error: cannot write report to '" << f.report_path << "'\n";
      lyapinf_report_free(report);
      return LYAPINF_EXIT_INPUT_ERROR;
    }
  }
  lyapinf_report_free(report);
  return code;
}

std::optional<std::vector<double>> parse_member(const std::string& text, size_t n) {
  const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array() || j.size() != n) return std::nullopt;
  std::vector<double> out;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) return std::nullopt;
    for (const auto& v : row) {
      if (!v.is_number()) return std::nullopt;
      out.push_back(v.get<double>());
    }
  }
  return out;
}

enum class Command { Check, Solve, Verify };

int run_command(Command which, const Flags& f) {
  lyapinf_instance* inst = nullptr;
  lyapinf_status st = lyapinf_instance_load_file(f.instance.c_str(), &inst);
  if (st != LYAPINF_OK) {
    if (f.json) {
      nlohmann::json err{{"instance", f.instance},
                         {"exit_code", LYAPINF_EXIT_INPUT_ERROR},
                         {"error", {{"kind", lyapinf_status_string(st)},
                                    {"message", lyapinf_last_error()}}}};
      std::cout << err.dump(2) << "\n";
    }
    return fail_status(st);
  }
  const lyapinf_options opts = to_options(f);
  lyapinf_report* report = nullptr;
  switch (which) {
    case Command::Check:
      st = lyapinf_check(inst, &opts, &report);
      break;
    case Command::Verify:
      st = lyapinf_verify(inst, &opts, &report);
      break;
    case Command::Solve: {
      std::optional<std::vector<double>> member;
      if (!f.member.empty()) {
        member = parse_member(f.member, lyapinf_instance_dim(inst));
        if (!member) {
          lyapinf_instance_free(inst);
          std::cerr << "error: --member must be an n x n JSON matrix\n";
          return LYAPINF_EXIT_INPUT_ERROR;
        }
      }
      st = lyapinf_solve(inst, &opts, member ? member->data() : nullptr, &report);
      break;
    }
  }
  lyapinf_instance_free(inst);
  if (st != LYAPINF_OK) return fail_status(st);
  return emit(report, f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint data-knowledge informativity for the Lyapunov equation"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* check = app.add_subcommand("check", "decide informativity and report P*");
  add_common(check, f);
  CLI::App* solve = app.add_subcommand("solve", "compute P* from the data and prior");
  add_common(solve, f);
  solve->add_flag("--reduced", f.reduced, "use the reduced solve (subspace_action prior)");
  solve->add_option("--member", f.member,
                    "evaluate at this member of the candidate set, e.g. '[[-1,5],[0,-2]]'");
  CLI::App* verify = app.add_subcommand("verify", "cross-check the checker with the oracle");
  add_common(verify, f);

  std::string spec_path;
  std::string out_path;
  CLI::App* simulate = app.add_subcommand("simulate", "simulate a system spec into a dataset");
  simulate->add_option("spec", spec_path, "system spec or generator instance")->required();
  simulate->add_option("out", out_path, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : LYAPINF_EXIT_INPUT_ERROR;
  }

  if (*check) return run_command(Command::Check, f);
  if (*solve) return run_command(Command::Solve, f);
  if (*verify) return run_command(Command::Verify, f);

  lyapinf_report* report = nullptr;
  const lyapinf_status st =
      lyapinf_simulate(spec_path.c_str(), out_path.empty() ? nullptr : out_path.c_str(),
                       &report);
  if (st != LYAPINF_OK) return fail_status(st);
  const int code = lyapinf_report_exit_code(report);
  if (code == 0) {
    std::cout << lyapinf_report_text(report);
  } else {
    std::cerr << "error: " << lyapinf_last_error() << "\n";
  }
  lyapinf_report_free(report);
  return code;
}
