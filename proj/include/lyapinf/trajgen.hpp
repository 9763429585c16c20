// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/matspace.hpp"
#include "lyapinf/sysmodel.hpp"

#include <span>

namespace lyapinf {

/// exp(A t). Throws NumericalError when the result overflows.
Matrix matrix_exponential(const Matrix& a, double t);

/// Samples x(t) = exp(A t) x0 at the given times, with exact derivatives
/// A x(t) attached.
Dataset simulate_trajectory(const Matrix& a, const Vector& x0,
                            std::span<const double> times);

enum class DifferenceScheme {
  /// Three-point second-order formulas everywhere, one-sided at the ends.
  /// Needs at least three samples.
  Central,
  /// Three-point central formula inside, two-point first-order one-sided
  /// formulas at the ends. Needs at least two samples.
  ForwardBackwardEnds,
};

/// Attaches finite-difference derivatives on the (possibly nonuniform) time
/// grid. The result is flagged approximate and carries the largest local
/// truncation error estimate.
Dataset estimate_derivatives(const Dataset& ds,
                             DifferenceScheme scheme = DifferenceScheme::Central);

}  // namespace lyapinf
