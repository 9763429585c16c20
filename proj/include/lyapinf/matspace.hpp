// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace lyapinf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative singular-value threshold below which a direction is numerically
/// zero.
inline constexpr double kDefaultRankTol = 1e-9;

/// Throws InputError unless every entry of m is finite.
void require_finite(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);

/// Column-stacking vectorization.
Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);

/// Ordered orthonormal family of rows x cols matrices under the Frobenius
/// inner product. May be empty, which represents the zero subspace.
struct SubspaceBasis {
  Index rows = 0;
  Index cols = 0;
  std::vector<Matrix> elements;

  std::size_t dimension() const noexcept { return elements.size(); }
  bool empty() const noexcept { return elements.empty(); }

  /// Vectorized elements as the columns of a (rows*cols) x dimension matrix.
  Matrix as_columns() const;

  static SubspaceBasis from_columns(const Matrix& columns, Index rows,
                                    Index cols);
  /// Basis of the whole rows x cols space (the elementary matrices).
  static SubspaceBasis full(Index rows, Index cols);
};

/// The affine set {base + sum_i c_i * directions[i] : c_i real}.
struct AffineMatrixSet {
  Matrix base;
  SubspaceBasis directions;

  Index n() const noexcept { return base.rows(); }
  std::size_t dimension() const noexcept { return directions.dimension(); }

  Matrix point(const Vector& coefficients) const;
  /// Frobenius distance from x to the set.
  double distance(const Matrix& x) const;
  /// Coordinates of the orthogonal projection of x onto the set.
  Vector coordinates(const Matrix& x) const;
};

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

/// Matrix K with K * vec(P) == vec(A P + P A^T) for every square P.
Matrix kron_sum_operator(const Matrix& a);

/// Orthonormal basis of the numerical null space of m as (m.cols() x 1)
/// elements. Singular values at or below rank_tol * sigma_max count as zero.
SubspaceBasis kernel_basis(const Matrix& m, double rank_tol);

/// Same as kernel_basis, returning the basis vectors as matrix columns.
Matrix null_space(const Matrix& m, double rank_tol);

/// Orthonormal columns spanning the numerical column space of m.
Matrix column_space_basis(const Matrix& m, double rank_tol);

/// Numerical rank with the same relative threshold convention.
Index numerical_rank(const Matrix& m, double rank_tol);

struct LeastSquaresSolution {
  Vector x;
  double residual = 0.0;  // ||m x - rhs||_2
  Index rank = 0;
};

/// Minimum-norm least-squares solution of m x = rhs with singular values at
/// or below rank_tol * sigma_max truncated.
LeastSquaresSolution least_squares(const Matrix& m, const Vector& rhs,
                                   double rank_tol);

/// {X : X * right == image}. Returns nullopt when the system is inconsistent,
/// judged by ||base*right - image||_F > consistency_tol * (1 + ||image||_F).
/// residual_out, when given, receives that residual.
std::optional<AffineMatrixSet> solve_right_action(
    const Matrix& right, const Matrix& image, double rank_tol,
    double consistency_tol, double* residual_out = nullptr);

/// Intersection of two affine matrix sets. nullopt when they are disjoint.
std::optional<AffineMatrixSet> affine_intersect(const AffineMatrixSet& s1,
                                                const AffineMatrixSet& s2,
                                                double rank_tol);

/// Flip the sign of each column so that its first entry of non-negligible
/// magnitude is positive.
void canonicalize_signs(Matrix& columns);

}  // namespace lyapinf
