// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#pragma once

#include "lyapinf/matspace.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lyapinf {

struct Sample {
  double t = 0.0;
  Vector x;
  std::optional<Vector> dx;
};

/// How the derivative samples of a dataset were obtained.
enum class DerivativeSource {
  None,         // no derivatives attached
  Exact,        // provided by the caller or by simulation
  Approximate,  // estimated by finite differences
};

/// Time-stamped samples of one state trajectory x(t) = exp(A t) x0.
class Dataset {
 public:
  /// Validates: at least one sample, strictly increasing non-negative times,
  /// every vector of length n, finite entries, derivatives on all samples or
  /// on none. Throws InputError otherwise.
  Dataset(Index n, std::vector<Sample> samples,
          DerivativeSource source = DerivativeSource::Exact,
          double truncation_estimate = 0.0);

  Index n() const noexcept { return n_; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Vector& x0() const { return samples_.front().x; }
  bool has_derivatives() const noexcept { return samples_.front().dx.has_value(); }
  DerivativeSource derivative_source() const noexcept { return source_; }
  bool approximate() const noexcept { return source_ == DerivativeSource::Approximate; }
  /// Largest local truncation error estimate of the derivative samples
  /// (zero unless approximate).
  double truncation_estimate() const noexcept { return truncation_estimate_; }

  /// State samples as columns (n x N).
  Matrix states() const;
  /// Derivative samples as columns (n x N). Throws when absent.
  Matrix derivatives() const;

 private:
  Index n_;
  std::vector<Sample> samples_;
  DerivativeSource source_;
  double truncation_estimate_;
};

/// Open interval; either end may be infinite.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains_strictly(double v) const noexcept { return lower < v && v < upper; }
  bool bounded_below() const noexcept { return std::isfinite(lower); }
  bool bounded_above() const noexcept { return std::isfinite(upper); }
};

/// {base + sum_i theta_i D_i : theta_i in bounds_i}. Entries known exactly are
/// absorbed into the base and carry no direction.
struct BoundedAffinePrior {
  Matrix base;
  std::vector<Matrix> directions;
  std::vector<Interval> bounds;
};

/// Every candidate A~ satisfies A~ * y0 == g.
struct SubspaceActionPrior {
  Matrix y0;
  Matrix g;
};

struct UnconstrainedPrior {};

class PriorKnowledge {
 public:
  using Variant =
      std::variant<BoundedAffinePrior, SubspaceActionPrior, UnconstrainedPrior>;

  /// Validates the class invariants for a state dimension n; throws
  /// InputError on violation.
  PriorKnowledge(Index n, Variant value, double rank_tol = kDefaultRankTol);

  static PriorKnowledge unconstrained(Index n) {
    return PriorKnowledge(n, UnconstrainedPrior{});
  }

  Index n() const noexcept { return n_; }
  const Variant& value() const noexcept { return value_; }
  const char* type_name() const noexcept;

  const BoundedAffinePrior* bounded_affine() const noexcept {
    return std::get_if<BoundedAffinePrior>(&value_);
  }
  const SubspaceActionPrior* subspace_action() const noexcept {
    return std::get_if<SubspaceActionPrior>(&value_);
  }

 private:
  Index n_;
  Variant value_;
};

/// Candidate matrices consistent with the data: {A~ : A~ X0 = X1} over the
/// provided samples, with base X1 X0^+ (minimum norm).
/// Throws PreconditionError when derivatives are missing and
/// CorruptDataError when the system is inconsistent.
AffineMatrixSet build_sigma_d(const Dataset& ds,
                              double rank_tol = kDefaultRankTol);

/// Affine hull of the prior knowledge. Bounds of a bounded-affine prior do not
/// shrink the hull because every interval is open and nonempty.
AffineMatrixSet prior_affine_hull(const PriorKnowledge& pk,
                                  double rank_tol = kDefaultRankTol);

/// build_sigma_d intersected with prior_affine_hull; nullopt when the data
/// and the prior contradict each other.
std::optional<AffineMatrixSet> consistent_set(
    const Dataset& ds, const PriorKnowledge& pk,
    double rank_tol = kDefaultRankTol);

enum class AssumptionStatus {
  Validated,            // the prior class guarantees the condition
  ValidatedGivenTruth,  // checked against a supplied ground truth
  NotCheckable,
};

struct AssumptionReport {
  AssumptionStatus status = AssumptionStatus::NotCheckable;
  std::string reason;
};

const char* to_string(AssumptionStatus status) noexcept;

/// Sufficient check that the candidate set has a relative-interior member in
/// the unique-solvability region: a convex prior containing the truth in its
/// relative interior. Throws AssumptionError when truth_a is supplied but is
/// not a member of the prior set.
AssumptionReport validate_prior_assumption(const PriorKnowledge& pk,
                                      const std::optional<Matrix>& truth_a);

/// Coordinates theta of x in a bounded-affine prior (x - base in the span of
/// the directions), with the residual of that fit.
struct PriorCoordinates {
  Vector theta;
  double residual = 0.0;
};
PriorCoordinates bounded_coordinates(const BoundedAffinePrior& prior,
                                     const Matrix& x);

}  // namespace lyapinf
