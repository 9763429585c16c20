// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/lyapcore.hpp"
#include "lyapinf/matspace.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lyapinf {

enum class VerdictTag { Informative, NotInformative, AssumptionViolated };

const char* to_string(VerdictTag tag) noexcept;

/// Two members of the candidate set whose Lyapunov solutions differ.
struct Witness {
  Matrix a1;
  Matrix a2;
  Matrix p1;
  Matrix p2;
  double distance = 0.0;  // ||p1 - p2||_F
};

struct InformativityVerdict {
  VerdictTag tag = VerdictTag::NotInformative;
  std::optional<Matrix> solution;  // present iff Informative
  double residual = 0.0;           // residual of the deciding solve
  double threshold = 0.0;          // the residual bound it was compared with
  std::string certificate;
  std::optional<Witness> witness;
};

/// Orthonormal basis of {P : A_i P + P A_i^T = 0 for every direction A_i}.
struct KernelSet {
  SubspaceBasis basis;
};

/// With no directions the kernel set is the whole n x n space.
KernelSet kernel_set(Index n, const std::vector<Matrix>& directions,
                     double rank_tol = kDefaultRankTol);

/// Decides informativity from the stacked system
///   A_0 P + P A_0^T = -Q,  A_i P + P A_i^T = 0  (i = 1..d)
/// through one minimum-norm least-squares solve. A singleton set whose only
/// member has no unique Lyapunov solution yields AssumptionViolated.
InformativityVerdict check_informativity_system(
    const AffineMatrixSet& s, const Matrix& q, double rank_tol = kDefaultRankTol,
    double gap_tol = kDefaultGapTol);

/// Decides informativity by testing whether Q lies in the image of the
/// kernel set under P -> A_0 P + P A_0^T.
InformativityVerdict check_informativity_subspace(
    const AffineMatrixSet& s, const Matrix& q, double rank_tol = kDefaultRankTol,
    double gap_tol = kDefaultGapTol);

/// Special case where the candidate set is {A~ : (A~ - A_0) Z = 0}: solves
/// A_0 Z W Z^T + Z W Z^T A_0^T = -Q in the r*r entries of W. Z must have
/// orthonormal columns.
InformativityVerdict check_informativity_special(
    const Matrix& z, const Matrix& a0, const Matrix& q,
    double rank_tol = kDefaultRankTol);

struct DecisionOptions {
  double rank_tol = kDefaultRankTol;
  double gap_tol = kDefaultGapTol;
  std::uint64_t seed = 0;
  int max_attempts = 64;
};

/// Full decision: AssumptionViolated when no member of s with a unique
/// Lyapunov solution can be found, otherwise check_informativity_system.
InformativityVerdict decide_informativity(const AffineMatrixSet& s,
                                          const Matrix& q,
                                          const DecisionOptions& options = {});

}  // namespace lyapinf
