// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/matspace.hpp"

#include "lyapinf/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace lyapinf {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Input: return "input";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::CorruptData: return "corrupt-data";
    case ErrorKind::Assumption: return "assumption";
    case ErrorKind::NotInformative: return "not-informative";
    case ErrorKind::Uniqueness: return "uniqueness";
    case ErrorKind::DegenerateSet: return "degenerate-set";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

using Svd = Eigen::JacobiSVD<Matrix>;

Index rank_from_singular_values(const Vector& sv, double rank_tol) {
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  const double cutoff = rank_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

void require_positive_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw PreconditionError("rank tolerance must be positive and finite");
  }
}

}  // namespace

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + " contains non-finite entries");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + " must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec: length " + std::to_string(v.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix SubspaceBasis::as_columns() const {
  Matrix out(rows * cols, static_cast<Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k) {
    out.col(static_cast<Index>(k)) = vec(elements[k]);
  }
  return out;
}

SubspaceBasis SubspaceBasis::from_columns(const Matrix& columns, Index rows,
                                          Index cols) {
  if (columns.rows() != rows * cols) {
    throw DimensionError("basis columns do not match the ambient shape");
  }
  SubspaceBasis basis{rows, cols, {}};
  basis.elements.reserve(static_cast<std::size_t>(columns.cols()));
  for (Index k = 0; k < columns.cols(); ++k) {
    basis.elements.push_back(unvec(columns.col(k), rows, cols));
  }
  return basis;
}

SubspaceBasis SubspaceBasis::full(Index rows, Index cols) {
  return from_columns(Matrix::Identity(rows * cols, rows * cols), rows, cols);
}

Matrix AffineMatrixSet::point(const Vector& coefficients) const {
  if (coefficients.size() != static_cast<Index>(dimension())) {
    throw DimensionError("coefficient count does not match set dimension");
  }
  Matrix x = base;
  for (std::size_t k = 0; k < dimension(); ++k) {
    x += coefficients(static_cast<Index>(k)) * directions.elements[k];
  }
  return x;
}

Vector AffineMatrixSet::coordinates(const Matrix& x) const {
  return directions.as_columns().transpose() * vec(x - base);
}

double AffineMatrixSet::distance(const Matrix& x) const {
  const Vector offset = vec(x - base);
  const Matrix d = directions.as_columns();
  return (offset - d * (d.transpose() * offset)).norm();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_sum_operator(const Matrix& a) {
  require_square(a, "kron_sum_operator input");
  const Index n = a.rows();
  Matrix k = Matrix::Zero(n * n, n * n);
  // Column-major vec: vec(A P) = (I kron A) vec(P), vec(P A^T) = (A kron I)
  // vec(P).
  for (Index j = 0; j < n; ++j) {
    k.block(j * n, j * n, n, n) += a;
    for (Index l = 0; l < n; ++l) {
      k.block(j * n, l * n, n, n).diagonal().array() += a(j, l);
    }
  }
  return k;
}

void canonicalize_signs(Matrix& columns) {
  for (Index c = 0; c < columns.cols(); ++c) {
    const double scale = columns.col(c).cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) continue;
    for (Index r = 0; r < columns.rows(); ++r) {
      if (std::abs(columns(r, c)) > 1e-10 * scale) {
        if (columns(r, c) < 0.0) columns.col(c) *= -1.0;
        break;
      }
    }
  }
}

Index numerical_rank(const Matrix& m, double rank_tol) {
  require_positive_tol(rank_tol);
  if (m.size() == 0) return 0;
  Svd svd(m);
  return rank_from_singular_values(svd.singularValues(), rank_tol);
}

Matrix null_space(const Matrix& m, double rank_tol) {
  require_positive_tol(rank_tol);
  const Index n = m.cols();
  if (m.rows() == 0 || m.isZero(0.0)) {
    return Matrix::Identity(n, n);
  }
  Svd svd(m, Eigen::ComputeFullV);
  const Index r = rank_from_singular_values(svd.singularValues(), rank_tol);
  Matrix basis = svd.matrixV().rightCols(n - r);
  canonicalize_signs(basis);
  return basis;
}

SubspaceBasis kernel_basis(const Matrix& m, double rank_tol) {
  return SubspaceBasis::from_columns(null_space(m, rank_tol), m.cols(), 1);
}

Matrix column_space_basis(const Matrix& m, double rank_tol) {
  require_positive_tol(rank_tol);
  if (m.size() == 0 || m.isZero(0.0)) {
    return Matrix(m.rows(), 0);
  }
  Svd svd(m, Eigen::ComputeThinU);
  const Index r = rank_from_singular_values(svd.singularValues(), rank_tol);
  Matrix z = svd.matrixU().leftCols(r);
  canonicalize_signs(z);
  return z;
}

LeastSquaresSolution least_squares(const Matrix& m, const Vector& rhs,
                                   double rank_tol) {
  require_positive_tol(rank_tol);
  if (m.rows() != rhs.size()) {
    throw DimensionError("least_squares: right-hand side length mismatch");
  }
  LeastSquaresSolution out;
  out.x = Vector::Zero(m.cols());
  if (m.size() == 0 || m.isZero(0.0)) {
    out.residual = rhs.norm();
    return out;
  }
  Svd svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  out.rank = rank_from_singular_values(sv, rank_tol);
  const Vector projected = svd.matrixU().leftCols(out.rank).transpose() * rhs;
  out.x = svd.matrixV().leftCols(out.rank) *
          projected.cwiseQuotient(sv.head(out.rank));
  out.residual = (m * out.x - rhs).norm();
  return out;
}

std::optional<AffineMatrixSet> solve_right_action(const Matrix& right,
                                                  const Matrix& image,
                                                  double rank_tol,
                                                  double consistency_tol,
                                                  double* residual_out) {
  require_positive_tol(rank_tol);
  if (right.rows() != image.rows() || right.cols() != image.cols()) {
    throw DimensionError("solve_right_action: operand shapes differ");
  }
  const Index n = right.rows();
  Matrix base = Matrix::Zero(n, n);
  Matrix free_rows = Matrix::Identity(n, n);  // complement of image(right)
  if (right.cols() > 0 && !right.isZero(0.0)) {
    Svd svd(right, Eigen::ComputeFullU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const Index r = rank_from_singular_values(sv, rank_tol);
    const Matrix u = svd.matrixU().leftCols(r);
    const Matrix v = svd.matrixV().leftCols(r);
    base = image * v * sv.head(r).cwiseInverse().asDiagonal() * u.transpose();
    free_rows = svd.matrixU().rightCols(n - r);
    canonicalize_signs(free_rows);
  }
  const double residual = (base * right - image).norm();
  if (residual_out != nullptr) *residual_out = residual;
  if (residual > consistency_tol * (1.0 + image.norm())) {
    return std::nullopt;
  }
  AffineMatrixSet set{base, SubspaceBasis{n, n, {}}};
  for (Index j = 0; j < free_rows.cols(); ++j) {
    for (Index i = 0; i < n; ++i) {
      Matrix d = Matrix::Zero(n, n);
      d.row(i) = free_rows.col(j).transpose();
      set.directions.elements.push_back(std::move(d));
    }
  }
  return set;
}

namespace {

// Rows of the returned matrix span the orthogonal complement of the set's
// directions, so that membership reads constraints * vec(X) == constraints *
// vec(base).
Matrix constraint_rows(const AffineMatrixSet& s, double rank_tol) {
  const Matrix d = s.directions.as_columns();
  const Index ambient = s.base.size();
  if (d.cols() == 0) return Matrix::Identity(ambient, ambient);
  return null_space(d.transpose(), rank_tol).transpose();
}

}  // namespace

std::optional<AffineMatrixSet> affine_intersect(const AffineMatrixSet& s1,
                                                const AffineMatrixSet& s2,
                                                double rank_tol) {
  if (s1.base.rows() != s2.base.rows() || s1.base.cols() != s2.base.cols()) {
    throw DimensionError("affine_intersect: ambient dimensions differ");
  }
  const Index rows = s1.base.rows();
  const Index cols = s1.base.cols();
  const Matrix c1 = constraint_rows(s1, rank_tol);
  const Matrix c2 = constraint_rows(s2, rank_tol);

  Matrix stacked(c1.rows() + c2.rows(), rows * cols);
  stacked << c1, c2;
  Vector rhs(stacked.rows());
  rhs << c1 * vec(s1.base), c2 * vec(s2.base);

  const LeastSquaresSolution ls = least_squares(stacked, rhs, rank_tol);
  if (ls.residual > rank_tol * (1.0 + rhs.norm())) {
    return std::nullopt;
  }
  return AffineMatrixSet{
      unvec(ls.x, rows, cols),
      SubspaceBasis::from_columns(null_space(stacked, rank_tol), rows, cols)};
}

}  // namespace lyapinf
