// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/informativity.hpp"
#include "lyapinf/lyapcore.hpp"
#include "lyapinf/sysmodel.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lyapinf {

inline constexpr double kDefaultAgreeTol = 1e-6;

/// Draws count members of s (intersected with the prior's bounds when the
/// prior is bounded-affine) whose Lyapunov equation is uniquely solvable.
/// Sample k depends only on (seed, k). Throws DegenerateSetError when a
/// sample cannot be drawn within its retry budget.
std::vector<Matrix> sample_consistent(const AffineMatrixSet& s,
                                      const PriorKnowledge& pk, int count,
                                      std::uint64_t seed,
                                      double gap_tol = kDefaultGapTol);

struct OracleResult {
  bool agree = false;
  std::optional<Matrix> solution;  // common solution when agree
  std::optional<Witness> witness;  // maximally separated pair otherwise
  double max_distance = 0.0;
  int samples = 0;
};

/// Solves the Lyapunov equation for every sample and compares all pairs:
/// agreement iff every pairwise distance is at most agree_tol * (1 + ||Q||_F).
OracleResult brute_force_informative(const AffineMatrixSet& s,
                                     const PriorKnowledge& pk, const Matrix& q,
                                     int count, std::uint64_t seed,
                                     double agree_tol = kDefaultAgreeTol,
                                     double gap_tol = kDefaultGapTol);

}  // namespace lyapinf
