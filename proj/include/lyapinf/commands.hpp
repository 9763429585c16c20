// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lyapinf {

/// Process exit codes shared by the CLI and the C API.
enum ExitCode : int {
  kExitInformative = 0,
  kExitInputError = 1,
  kExitNotInformative = 2,
  kExitAssumptionViolated = 3,
  kExitIntegrityFailure = 4,
};

/// Command-line overrides; unset fields fall back to the instance file, then
/// to the library defaults.
struct CommandOptions {
  std::optional<double> rank_tol;
  std::optional<double> gap_tol;
  std::optional<double> agree_tol;
  std::optional<std::uint64_t> seed;
  int samples = 32;
  bool reduced = false;
  std::optional<Matrix> member;  // solve only: evaluate at this member of S
};

struct CommandResult {
  int exit_code = kExitInputError;
  json report;       // machine-readable report (see README)
  std::string text;  // human-readable report
  std::vector<std::string> warnings;
};

/// Each run_* function catches library errors and turns them into the exit
/// code contract; the report then carries an "error" object.
CommandResult run_check(const ProblemInstance& inst, const CommandOptions& opts,
                        const std::string& source);
CommandResult run_solve(const ProblemInstance& inst, const CommandOptions& opts,
                        const std::string& source);
CommandResult run_verify(const ProblemInstance& inst, const CommandOptions& opts,
                         const std::string& source);

/// Loads the instance first; schema errors become exit 1.
CommandResult run_check_file(const std::string& path, const CommandOptions& opts);
CommandResult run_solve_file(const std::string& path, const CommandOptions& opts);
CommandResult run_verify_file(const std::string& path, const CommandOptions& opts);

/// Replaces the generator block of a system spec by the simulated dataset.
/// A bare {A, x0, times} document yields {n, dataset}. Returns the output
/// document text; writes it to out_path when non-empty.
CommandResult run_simulate(const std::string& spec_path, const std::string& out_path);
CommandResult run_simulate_text(const std::string& spec_text, const std::string& source);

}  // namespace lyapinf
