// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/solver.hpp"

#include "lyapinf/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lyapinf {

namespace {

// Separates the stream of the integrity re-solve from the primary pick.
constexpr std::uint64_t kIntegritySeedSalt = 0x9e3779b97f4a7c15ULL;

bool usable(const Matrix& a, double gap_tol) {
  try {
    return in_An(a, gap_tol);
  } catch (const NumericalError&) {
    return false;
  }
}

}  // namespace

Matrix pick_member_in_An(const AffineMatrixSet& s, double gap_tol,
                         std::uint64_t seed, int max_attempts, MemberSearch mode) {
  require_square(s.base, "candidate set base");
  if (mode == MemberSearch::BaseFirst && usable(s.base, gap_tol)) return s.base;

  const auto d = static_cast<Index>(s.dimension());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < max_attempts && d > 0; ++attempt) {
    const double scale = std::ldexp(1.0, std::min(attempt, 20));
    Vector c(d);
    for (Index i = 0; i < d; ++i) c(i) = scale * normal(rng);
    Matrix candidate = s.point(c);
    if (usable(candidate, gap_tol)) return candidate;
  }
  if (mode == MemberSearch::RandomOnly && d == 0 && usable(s.base, gap_tol)) {
    return s.base;
  }
  std::ostringstream msg;
  msg << "no member of the " << d << "-dimensional candidate set with a uniquely "
      << "solvable Lyapunov equation was found in " << max_attempts << " attempts";
  throw AssumptionError(msg.str());
}

Matrix compute_phi(const AffineMatrixSet& s, const Matrix& q, const PhiOptions& options) {
  const Matrix member =
      pick_member_in_An(s, options.gap_tol, options.seed, options.max_attempts, options.mode);
  Matrix p = solve_lyapunov(member, q, options.gap_tol);

  if (options.integrity_check && s.dimension() > 0) {
    Matrix second;
    try {
      second = pick_member_in_An(s, options.gap_tol, options.seed ^ kIntegritySeedSalt,
                                 options.max_attempts, MemberSearch::RandomOnly);
    } catch (const AssumptionError&) {
      return p;
    }
    const Matrix p2 = solve_lyapunov(second, q, options.gap_tol);
    const double gap = (p - p2).norm();
    if (gap > 1e-6 * (1.0 + p.norm())) {
      std::ostringstream msg;
      msg << "two members of the candidate set give Lyapunov solutions "
          << gap << " apart; the data-knowledge pair is not informative for this Q";
      throw IntegrityError(msg.str());
    }
  }
  return p;
}

Matrix compute_phi_with_member(const AffineMatrixSet& s, const Matrix& member,
                               const Matrix& q, const PhiOptions& options) {
  if (member.rows() != s.n() || member.cols() != s.n()) {
    throw DimensionError("member does not match the candidate set dimension");
  }
  const double distance = s.distance(member);
  if (distance > 1e-8 * (1.0 + member.norm())) {
    std::ostringstream msg;
    msg << "matrix is not a member of the candidate set (distance " << distance << ")";
    throw PreconditionError(msg.str());
  }
  return solve_lyapunov(member, q, options.gap_tol);
}

void require_orthonormal_columns(const Matrix& z) {
  const Matrix gram = z.transpose() * z;
  const double err = (gram - Matrix::Identity(z.cols(), z.cols())).norm();
  if (!(err <= 1e-10)) {
    std::ostringstream msg;
    msg << "Z must have orthonormal columns (||Z^T Z - I||_F = " << err << ")";
    throw PreconditionError(msg.str());
  }
}

Matrix reduced_lyapunov_operator(const Matrix& a, const Matrix& z) {
  require_square(a, "reduced operator coefficient");
  if (z.rows() != a.rows()) throw DimensionError("Z row count must match A");
  const Matrix az = a * z;
  // vec(X W Y^T) = (Y kron X) vec(W)
  return kron(z, az) + kron(az, z);
}

ReducedSolution compute_phi_reduced(const Matrix& a_tilde, const Matrix& z,
                                    const Matrix& q, double rank_tol) {
  require_square(q, "Q");
  if (q.rows() != a_tilde.rows()) throw DimensionError("Q does not match A~");
  require_orthonormal_columns(z);

  ReducedSolution out;
  out.z = z;
  const Index r = z.cols();
  const Matrix op = reduced_lyapunov_operator(a_tilde, z);
  out.unknowns = op.cols();

  const Index rank = numerical_rank(op, rank_tol);
  if (rank != r * r) {
    std::ostringstream msg;
    msg << "reduced Lyapunov operator has rank " << rank << " < " << r * r
        << " unknowns; Z or the chosen member violates the uniqueness premise";
    throw UniquenessError(msg.str());
  }
  const LeastSquaresSolution ls = least_squares(op, -vec(q), rank_tol);
  out.residual = ls.residual;
  if (ls.residual > rank_tol * (1.0 + q.norm())) {
    std::ostringstream msg;
    msg << "reduced system residual " << ls.residual << " exceeds "
        << rank_tol * (1.0 + q.norm()) << "; not informative for this Q";
    throw NotInformativeError(msg.str());
  }
  out.w = unvec(ls.x, r, r);
  out.p = z * out.w * z.transpose();
  return out;
}

}  // namespace lyapinf
