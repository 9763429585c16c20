// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/lyapcore.hpp"

#include "lyapinf/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace lyapinf {

namespace {

std::string format_complex(std::complex<double> z) {
  std::ostringstream out;
  out.precision(6);
  out << z.real();
  if (z.imag() != 0.0) out << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return out.str();
}

}  // namespace

SpectralGap spectral_gap(const Matrix& a) {
  require_square(a, "spectral_gap input");
  require_finite(a, "spectral_gap input");
  SpectralGap gap;
  const Index n = a.rows();
  if (n == 0) return gap;

  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigenvalue iteration failed for " << n << "x" << n
        << " matrix with Frobenius norm " << a.norm();
    throw NumericalError(msg.str());
  }
  const auto& values = solver.eigenvalues();
  gap.eigenvalues.assign(values.data(), values.data() + n);
  gap.min_pair_sum = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double s = std::abs(values(i) + values(j));
      if (s < gap.min_pair_sum) {
        gap.min_pair_sum = s;
        gap.first = i;
        gap.second = j;
      }
    }
  }
  return gap;
}

bool in_An(const Matrix& a, double gap_tol) {
  return spectral_gap(a).min_pair_sum > gap_tol * (1.0 + a.norm());
}

double lyapunov_residual(const Matrix& a, const Matrix& p, const Matrix& q) {
  return (a * p + p * a.transpose() + q).norm();
}

Matrix solve_lyapunov(const Matrix& a, const Matrix& q, double gap_tol) {
  require_square(a, "Lyapunov coefficient");
  require_square(q, "Lyapunov right-hand side");
  if (q.rows() != a.rows()) {
    throw DimensionError("Lyapunov operands differ in size");
  }
  require_finite(q, "Lyapunov right-hand side");

  const SpectralGap gap = spectral_gap(a);
  if (!(gap.min_pair_sum > gap_tol * (1.0 + a.norm()))) {
    std::ostringstream msg;
    msg << "coefficient matrix has eigenvalues "
        << format_complex(gap.eigenvalues[gap.first]) << " and "
        << format_complex(gap.eigenvalues[gap.second])
        << " summing to magnitude " << gap.min_pair_sum
        << "; the Lyapunov equation has no unique solution";
    throw PreconditionError(msg.str());
  }

  const Index n = a.rows();
  const Matrix k = kron_sum_operator(a);
  const Vector p = k.fullPivLu().solve(-vec(q));
  Matrix out = unvec(p, n, n);

  const double residual = lyapunov_residual(a, out, q);
  if (!(residual <= 1e-9 * (1.0 + q.norm()))) {
    std::ostringstream msg;
    msg << "Lyapunov solve residual " << residual << " exceeds 1e-9*(1+||Q||)"
        << " (spectral gap " << gap.min_pair_sum << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace lyapinf
