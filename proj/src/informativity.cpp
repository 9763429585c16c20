// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/informativity.hpp"

#include "lyapinf/error.hpp"
#include "lyapinf/solver.hpp"

#include <sstream>

namespace lyapinf {

const char* to_string(VerdictTag tag) noexcept {
  switch (tag) {
    case VerdictTag::Informative: return "informative";
    case VerdictTag::NotInformative: return "not_informative";
    case VerdictTag::AssumptionViolated: return "assumption_violated";
  }
  return "unknown";
}

namespace {

void require_compatible(const AffineMatrixSet& s, const Matrix& q) {
  require_square(s.base, "candidate set base");
  require_square(q, "Q");
  if (q.rows() != s.n()) throw DimensionError("Q does not match the candidate set dimension");
  require_finite(q, "Q");
}

InformativityVerdict singleton_verdict(const AffineMatrixSet& s, const Matrix& q,
                                       double gap_tol) {
  InformativityVerdict v;
  v.threshold = 1e-9 * (1.0 + q.norm());
  if (!in_An(s.base, gap_tol)) {
    v.tag = VerdictTag::AssumptionViolated;
    v.certificate =
        "the candidate set is a single matrix whose Lyapunov equation has no "
        "unique solution";
    return v;
  }
  Matrix p = solve_lyapunov(s.base, q, gap_tol);
  v.tag = VerdictTag::Informative;
  v.residual = lyapunov_residual(s.base, p, q);
  v.solution = std::move(p);
  v.certificate = "the candidate set is a single matrix";
  return v;
}

InformativityVerdict from_residual(double residual, double threshold, Matrix p,
                                   const std::string& what) {
  InformativityVerdict v;
  v.residual = residual;
  v.threshold = threshold;
  std::ostringstream cert;
  if (residual <= threshold) {
    v.tag = VerdictTag::Informative;
    v.solution = std::move(p);
    cert << what << " solvable: residual " << residual << " <= " << threshold;
  } else {
    v.tag = VerdictTag::NotInformative;
    cert << what << " unsolvable: residual " << residual << " > " << threshold;
  }
  v.certificate = cert.str();
  return v;
}

}  // namespace

KernelSet kernel_set(Index n, const std::vector<Matrix>& directions, double rank_tol) {
  if (directions.empty()) return KernelSet{SubspaceBasis::full(n, n)};
  Matrix stacked(static_cast<Index>(directions.size()) * n * n, n * n);
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (directions[i].rows() != n || directions[i].cols() != n) {
      throw DimensionError("kernel_set directions differ in shape");
    }
    stacked.middleRows(static_cast<Index>(i) * n * n, n * n) =
        kron_sum_operator(directions[i]);
  }
  return KernelSet{SubspaceBasis::from_columns(null_space(stacked, rank_tol), n, n)};
}

InformativityVerdict check_informativity_system(const AffineMatrixSet& s,
                                                const Matrix& q, double rank_tol,
                                                double gap_tol) {
  require_compatible(s, q);
  if (s.dimension() == 0) return singleton_verdict(s, q, gap_tol);

  const Index n = s.n();
  const Index nn = n * n;
  const Index blocks = static_cast<Index>(s.dimension()) + 1;
  Matrix stacked(blocks * nn, nn);
  Vector rhs = Vector::Zero(blocks * nn);
  stacked.topRows(nn) = kron_sum_operator(s.base);
  rhs.head(nn) = -vec(q);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    stacked.middleRows((static_cast<Index>(i) + 1) * nn, nn) =
        kron_sum_operator(s.directions.elements[i]);
  }
  const LeastSquaresSolution ls = least_squares(stacked, rhs, rank_tol);
  return from_residual(ls.residual, rank_tol * (1.0 + q.norm()), unvec(ls.x, n, n),
                       "stacked Lyapunov system");
}

InformativityVerdict check_informativity_subspace(const AffineMatrixSet& s,
                                                  const Matrix& q, double rank_tol,
                                                  double gap_tol) {
  require_compatible(s, q);
  if (s.dimension() == 0) return singleton_verdict(s, q, gap_tol);

  const Index n = s.n();
  const SubspaceBasis kernel = kernel_set(n, s.directions.elements, rank_tol).basis;
  Matrix image(n * n, static_cast<Index>(kernel.dimension()));
  for (std::size_t j = 0; j < kernel.dimension(); ++j) {
    const Matrix& k = kernel.elements[j];
    image.col(static_cast<Index>(j)) = vec(s.base * k + k * s.base.transpose());
  }
  const LeastSquaresSolution ls = least_squares(image, -vec(q), rank_tol);
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < kernel.dimension(); ++j) {
    p += ls.x(static_cast<Index>(j)) * kernel.elements[j];
  }
  auto v = from_residual(ls.residual, rank_tol * (1.0 + q.norm()), std::move(p),
                         "membership of Q in L0(K)");
  v.certificate += " (dim K = " + std::to_string(kernel.dimension()) + ")";
  return v;
}

InformativityVerdict check_informativity_special(const Matrix& z, const Matrix& a0,
                                                 const Matrix& q, double rank_tol) {
  require_square(a0, "A0");
  require_square(q, "Q");
  if (q.rows() != a0.rows() || z.rows() != a0.rows()) {
    throw DimensionError("Z, A0 and Q must share the state dimension");
  }
  require_orthonormal_columns(z);
  const Matrix op = reduced_lyapunov_operator(a0, z);
  const LeastSquaresSolution ls = least_squares(op, -vec(q), rank_tol);
  const Index r = z.cols();
  const Matrix w = unvec(ls.x, r, r);
  auto v = from_residual(ls.residual, rank_tol * (1.0 + q.norm()),
                         z * w * z.transpose(), "reduced system");
  v.certificate += " (" + std::to_string(op.cols()) + " unknowns)";
  return v;
}

InformativityVerdict decide_informativity(const AffineMatrixSet& s, const Matrix& q,
                                          const DecisionOptions& options) {
  require_compatible(s, q);
  try {
    (void)pick_member_in_An(s, options.gap_tol, options.seed, options.max_attempts);
  } catch (const AssumptionError& e) {
    InformativityVerdict v;
    v.tag = VerdictTag::AssumptionViolated;
    v.certificate = e.what();
    return v;
  }
  return check_informativity_system(s, q, options.rank_tol, options.gap_tol);
}

}  // namespace lyapinf
