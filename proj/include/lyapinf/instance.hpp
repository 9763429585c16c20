// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/matspace.hpp"
#include "lyapinf/sysmodel.hpp"
#include "lyapinf/trajgen.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lyapinf {

using json = nlohmann::json;

/// Simulation-mode data source: the trajectory of a known system.
struct TrajectoryGenerator {
  Matrix a;
  Vector x0;
  std::vector<double> times;
};

struct ToleranceOverrides {
  std::optional<double> rank_tol;
  std::optional<double> gap_tol;
  std::optional<double> agree_tol;
};

/// One problem instance file: Q, one data source, prior knowledge and optional
/// tolerance overrides and seed.
struct ProblemInstance {
  Index n = 0;
  Matrix q;
  std::optional<Dataset> dataset;
  std::optional<TrajectoryGenerator> generator;
  PriorKnowledge prior = PriorKnowledge::unconstrained(1);
  DifferenceScheme scheme = DifferenceScheme::Central;
  ToleranceOverrides tolerances;
  std::optional<std::uint64_t> seed;
};

/// Parses and validates an instance document. Every schema violation raises
/// InputError whose message starts with "<source>:<line>: <json pointer>: ".
ProblemInstance parse_instance(std::string_view text,
                               const std::string& source = "<instance>");

ProblemInstance load_instance(const std::filesystem::path& path);

/// Reads a whole file; IoError on failure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

json matrix_to_json(const Matrix& m);
json vector_to_json(const Vector& v);
json dataset_to_json(const Dataset& ds);

/// Parses a row-major nested array into a matrix (test and tool helper).
Matrix matrix_from_json(const json& j);

}  // namespace lyapinf
