// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/lyapcore.hpp"
#include "lyapinf/matspace.hpp"

#include <cstdint>

namespace lyapinf {

enum class MemberSearch {
  BaseFirst,   // try the base point before random members
  RandomOnly,  // skip the base point
};

/// A member of s whose Lyapunov equation is uniquely solvable. Candidates are
/// the base point, then base + scale * c with c standard normal coordinates
/// along the directions and the scale doubling per attempt (capped at 2^20).
/// Throws AssumptionError when max_attempts candidates all fail.
Matrix pick_member_in_An(const AffineMatrixSet& s, double gap_tol,
                         std::uint64_t seed, int max_attempts = 64,
                         MemberSearch mode = MemberSearch::BaseFirst);

struct PhiOptions {
  double rank_tol = kDefaultRankTol;
  double gap_tol = kDefaultGapTol;
  std::uint64_t seed = 0;
  int max_attempts = 64;
  MemberSearch mode = MemberSearch::BaseFirst;
  // Re-solve with a second, independently drawn member and compare.
  bool integrity_check = true;
};

/// Lyapunov solution of an informative candidate set, computed from any of its
/// members. Throws IntegrityError when two members disagree by more than
/// 1e-6 relative, which means the set was not informative.
Matrix compute_phi(const AffineMatrixSet& s, const Matrix& q,
                   const PhiOptions& options = {});

/// Same, with the member chosen by the caller. Throws PreconditionError when
/// the member is not in s or not uniquely solvable.
Matrix compute_phi_with_member(const AffineMatrixSet& s, const Matrix& member,
                               const Matrix& q, const PhiOptions& options = {});

/// Operator L with L * vec(W) == vec(A Z W Z^T + Z W Z^T A^T); it has
/// n*n rows and r*r columns for an n x r matrix Z.
Matrix reduced_lyapunov_operator(const Matrix& a, const Matrix& z);

struct ReducedSolution {
  Matrix w;  // r x r
  Matrix z;  // n x r
  Matrix p;  // Z W Z^T
  Index unknowns = 0;
  double residual = 0.0;
};

/// Solves A~ Z W Z^T + Z W Z^T A~^T = -Q for W. Throws UniquenessError when the
/// reduced operator is rank deficient and NotInformativeError when the
/// residual exceeds rank_tol * (1 + ||Q||_F).
ReducedSolution compute_phi_reduced(const Matrix& a_tilde, const Matrix& z,
                                    const Matrix& q,
                                    double rank_tol = kDefaultRankTol);

/// Throws PreconditionError unless Z^T Z = I to 1e-10.
void require_orthonormal_columns(const Matrix& z);

}  // namespace lyapinf
