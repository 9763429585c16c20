// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/sysmodel.hpp"

#include "lyapinf/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lyapinf {

namespace {

// Relative residual below which a matrix counts as a member of an exactly
// specified set.
constexpr double kMembershipTol = 1e-8;

void require_shape(const Matrix& m, Index rows, Index cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    std::ostringstream msg;
    msg << what << " must be " << rows << "x" << cols << ", got " << m.rows()
        << "x" << m.cols();
    throw InputError(msg.str());
  }
  if (!m.allFinite()) throw InputError(what + " contains non-finite entries");
}

}  // namespace

Dataset::Dataset(Index n, std::vector<Sample> samples, DerivativeSource source,
                 double truncation_estimate)
    : n_(n),
      samples_(std::move(samples)),
      source_(source),
      truncation_estimate_(truncation_estimate) {
  if (n_ <= 0) throw InputError("dataset state dimension must be positive");
  if (samples_.empty()) throw InputError("dataset needs at least one sample");
  const bool with_dx = samples_.front().dx.has_value();
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const Sample& s = samples_[k];
    const std::string where = "sample " + std::to_string(k);
    if (!std::isfinite(s.t) || s.t < 0.0) {
      throw InputError(where + ": time must be finite and non-negative");
    }
    if (k > 0 && !(s.t > samples_[k - 1].t)) {
      throw InputError(where + ": times must be strictly increasing");
    }
    if (s.x.size() != n_ || !s.x.allFinite()) {
      throw InputError(where + ": state must be a finite vector of length " +
                       std::to_string(n_));
    }
    if (s.dx.has_value() != with_dx) {
      throw InputError(where +
                       ": derivatives must be given for all samples or none");
    }
    if (with_dx && (s.dx->size() != n_ || !s.dx->allFinite())) {
      throw InputError(where + ": derivative must be a finite vector of length " +
                       std::to_string(n_));
    }
  }
  if (!with_dx) {
    source_ = DerivativeSource::None;
  } else if (source_ == DerivativeSource::None) {
    source_ = DerivativeSource::Exact;
  }
  if (source_ != DerivativeSource::Approximate) truncation_estimate_ = 0.0;
}

Matrix Dataset::states() const {
  Matrix x(n_, static_cast<Index>(samples_.size()));
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    x.col(static_cast<Index>(k)) = samples_[k].x;
  }
  return x;
}

Matrix Dataset::derivatives() const {
  if (!has_derivatives()) {
    throw PreconditionError("dataset carries no derivative samples");
  }
  Matrix dx(n_, static_cast<Index>(samples_.size()));
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    dx.col(static_cast<Index>(k)) = *samples_[k].dx;
  }
  return dx;
}

PriorKnowledge::PriorKnowledge(Index n, Variant value, double rank_tol)
    : n_(n), value_(std::move(value)) {
  if (n_ <= 0) throw InputError("prior state dimension must be positive");
  if (auto* ba = std::get_if<BoundedAffinePrior>(&value_)) {
    require_shape(ba->base, n_, n_, "bounded_affine base");
    if (ba->bounds.size() != ba->directions.size()) {
      throw InputError("bounded_affine: one bound interval per direction required");
    }
    Matrix stacked(n_ * n_, static_cast<Index>(ba->directions.size()));
    for (std::size_t i = 0; i < ba->directions.size(); ++i) {
      require_shape(ba->directions[i], n_, n_,
                    "bounded_affine direction " + std::to_string(i));
      stacked.col(static_cast<Index>(i)) = vec(ba->directions[i]);
      const Interval& b = ba->bounds[i];
      if (std::isnan(b.lower) || std::isnan(b.upper) || !(b.lower < b.upper)) {
        throw InputError("bounded_affine bound " + std::to_string(i) +
                         " must be a nonempty open interval");
      }
    }
    if (stacked.cols() > 0 && numerical_rank(stacked, rank_tol) != stacked.cols()) {
      throw InputError("bounded_affine directions are not linearly independent");
    }
  } else if (auto* sa = std::get_if<SubspaceActionPrior>(&value_)) {
    if (sa->y0.rows() != n_) {
      throw InputError("subspace_action Y0 must have " + std::to_string(n_) + " rows");
    }
    require_shape(sa->y0, n_, sa->y0.cols(), "subspace_action Y0");
    require_shape(sa->g, n_, sa->y0.cols(), "subspace_action G");
  }
}

const char* PriorKnowledge::type_name() const noexcept {
  switch (value_.index()) {
    case 0: return "bounded_affine";
    case 1: return "subspace_action";
    default: return "unconstrained";
  }
}

AffineMatrixSet build_sigma_d(const Dataset& ds, double rank_tol) {
  const Matrix x0 = ds.states();
  const Matrix x1 = ds.derivatives();
  double residual = 0.0;
  auto set = solve_right_action(x0, x1, rank_tol,
                                std::numeric_limits<double>::infinity(), &residual);
  const double exact_allowance = rank_tol * (1.0 + x1.norm());
  // Finite-difference derivatives are consistent only up to their truncation
  // error.
  const double fd_allowance =
      ds.approximate()
          ? 10.0 * std::sqrt(static_cast<double>(x1.size())) * ds.truncation_estimate()
          : 0.0;
  if (!set || residual > std::max(exact_allowance, fd_allowance)) {
    std::ostringstream msg;
    msg << "state and derivative samples admit no linear system: relative residual "
        << residual / (1.0 + x1.norm()) << " exceeds tolerance " << rank_tol;
    throw CorruptDataError(msg.str());
  }
  return *set;
}

AffineMatrixSet prior_affine_hull(const PriorKnowledge& pk, double rank_tol) {
  const Index n = pk.n();
  if (const auto* ba = pk.bounded_affine()) {
    Matrix stacked(n * n, static_cast<Index>(ba->directions.size()));
    for (std::size_t i = 0; i < ba->directions.size(); ++i) {
      stacked.col(static_cast<Index>(i)) = vec(ba->directions[i]);
    }
    const Matrix basis = column_space_basis(stacked, rank_tol);
    const Vector b = vec(ba->base);
    return AffineMatrixSet{unvec(b - basis * (basis.transpose() * b), n, n),
                           SubspaceBasis::from_columns(basis, n, n)};
  }
  if (const auto* sa = pk.subspace_action()) {
    double residual = 0.0;
    auto set = solve_right_action(sa->y0, sa->g, rank_tol, rank_tol, &residual);
    if (!set) {
      std::ostringstream msg;
      msg << "subspace_action prior is inconsistent: no matrix maps Y0 to G "
          << "(residual " << residual << ")";
      throw InputError(msg.str());
    }
    return *set;
  }
  return AffineMatrixSet{Matrix::Zero(n, n), SubspaceBasis::full(n, n)};
}

std::optional<AffineMatrixSet> consistent_set(const Dataset& ds,
                                              const PriorKnowledge& pk,
                                              double rank_tol) {
  if (ds.n() != pk.n()) {
    throw DimensionError("dataset and prior knowledge differ in state dimension");
  }
  return affine_intersect(build_sigma_d(ds, rank_tol),
                          prior_affine_hull(pk, rank_tol), rank_tol);
}

const char* to_string(AssumptionStatus status) noexcept {
  switch (status) {
    case AssumptionStatus::Validated: return "validated";
    case AssumptionStatus::ValidatedGivenTruth: return "validated_given_truth";
    case AssumptionStatus::NotCheckable: return "not_checkable";
  }
  return "unknown";
}

PriorCoordinates bounded_coordinates(const BoundedAffinePrior& prior,
                                     const Matrix& x) {
  const Index n = prior.base.rows();
  Matrix stacked(n * n, static_cast<Index>(prior.directions.size()));
  for (std::size_t i = 0; i < prior.directions.size(); ++i) {
    stacked.col(static_cast<Index>(i)) = vec(prior.directions[i]);
  }
  const Vector offset = vec(x - prior.base);
  PriorCoordinates out;
  if (stacked.cols() == 0) {
    out.theta = Vector(0);
    out.residual = offset.norm();
    return out;
  }
  out.theta = stacked.colPivHouseholderQr().solve(offset);
  out.residual = (stacked * out.theta - offset).norm();
  return out;
}

AssumptionReport validate_prior_assumption(const PriorKnowledge& pk,
                                      const std::optional<Matrix>& truth_a) {
  if (std::holds_alternative<UnconstrainedPrior>(pk.value())) {
    return {AssumptionStatus::Validated,
            "unconstrained prior: its relative interior is the whole space"};
  }
  if (!truth_a) {
    return {AssumptionStatus::Validated,
            std::string(pk.type_name()) +
                " prior is convex; membership of the true system is taken as given"};
  }
  const Matrix& a = *truth_a;
  if (a.rows() != pk.n() || a.cols() != pk.n()) {
    throw DimensionError("ground-truth matrix does not match the prior dimension");
  }

  if (const auto* ba = pk.bounded_affine()) {
    const PriorCoordinates c = bounded_coordinates(*ba, a);
    if (c.residual > kMembershipTol * (1.0 + a.norm())) {
      std::ostringstream msg;
      msg << "ground truth is not in the affine hull of the bounded_affine prior "
          << "(residual " << c.residual << ")";
      throw AssumptionError(msg.str());
    }
    for (Index i = 0; i < c.theta.size(); ++i) {
      const Interval& b = ba->bounds[static_cast<std::size_t>(i)];
      if (!b.contains_strictly(c.theta(i))) {
        std::ostringstream msg;
        msg << "ground truth parameter theta_" << i << " = " << c.theta(i)
            << " is not strictly inside (" << b.lower << ", " << b.upper << ")";
        throw AssumptionError(msg.str());
      }
    }
    return {AssumptionStatus::ValidatedGivenTruth,
            "ground truth lies strictly inside every parameter bound"};
  }

  const auto* sa = pk.subspace_action();
  const double residual = (a * sa->y0 - sa->g).norm();
  if (residual > kMembershipTol * (1.0 + sa->g.norm())) {
    std::ostringstream msg;
    msg << "ground truth does not satisfy A*Y0 = G (residual " << residual << ")";
    throw AssumptionError(msg.str());
  }
  return {AssumptionStatus::ValidatedGivenTruth,
          "ground truth satisfies the subspace action exactly"};
}

}  // namespace lyapinf
