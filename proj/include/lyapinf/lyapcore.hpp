// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/matspace.hpp"

#include <complex>
#include <vector>

namespace lyapinf {

inline constexpr double kDefaultGapTol = 1e-8;

/// Smallest |lambda + lambda'| over all ordered eigenvalue pairs of a square
/// matrix, including lambda paired with itself. The Lyapunov operator of A is
/// invertible exactly when this is nonzero.
struct SpectralGap {
  double min_pair_sum = 0.0;
  std::vector<std::complex<double>> eigenvalues;
  // Indices of a pair attaining the minimum.
  Index first = 0;
  Index second = 0;
};

SpectralGap spectral_gap(const Matrix& a);

/// True iff spectral_gap(a).min_pair_sum > gap_tol * (1 + ||a||_F).
bool in_An(const Matrix& a, double gap_tol = kDefaultGapTol);

/// The unique P with A P + P A^T = -Q. Q may be nonsymmetric.
/// Throws PreconditionError when A fails in_An, naming the offending pair.
Matrix solve_lyapunov(const Matrix& a, const Matrix& q,
                      double gap_tol = kDefaultGapTol);

/// ||A P + P A^T + Q||_F.
double lyapunov_residual(const Matrix& a, const Matrix& p, const Matrix& q);

}  // namespace lyapinf
