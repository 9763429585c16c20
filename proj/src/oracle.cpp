// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/oracle.hpp"

#include "lyapinf/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace lyapinf {

namespace {

constexpr int kTriesPerSample = 256;
constexpr int kTriesPerScale = 16;
constexpr int kProjectionIterations = 2000;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, int index) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(index));
}

bool inside_bounds(const BoundedAffinePrior& prior, const Matrix& x) {
  const PriorCoordinates c = bounded_coordinates(prior, x);
  for (Index i = 0; i < c.theta.size(); ++i) {
    if (!prior.bounds[static_cast<std::size_t>(i)].contains_strictly(c.theta(i))) {
      return false;
    }
  }
  return true;
}

bool usable(const Matrix& a, double gap_tol) {
  try {
    return in_An(a, gap_tol);
  } catch (const NumericalError&) {
    return false;
  }
}

// Clamps theta into the box shrunk by a margin: 5% of the width for finite
// intervals, one unit from a single finite end.
Vector clamp_inside(const BoundedAffinePrior& prior, Vector theta) {
  for (Index i = 0; i < theta.size(); ++i) {
    const Interval& b = prior.bounds[static_cast<std::size_t>(i)];
    double lo = b.lower, hi = b.upper;
    if (b.bounded_below() && b.bounded_above()) {
      const double margin = 0.05 * (hi - lo);
      lo += margin;
      hi -= margin;
    } else if (b.bounded_below()) {
      lo += 1.0;
    } else if (b.bounded_above()) {
      hi -= 1.0;
    }
    theta(i) = std::clamp(theta(i), lo, hi);
  }
  return theta;
}

// Sampling center. Without bounds this is the base point of s. With bounds,
// alternating projections between s and the shrunk box (both taken in prior
// coordinates theta) find a point of s strictly inside the bounds whenever
// the two intersect.
Matrix sampling_center(const AffineMatrixSet& s, const PriorKnowledge& pk) {
  const auto* prior = pk.bounded_affine();
  if (prior == nullptr || prior->directions.empty()) return s.base;

  const Vector theta0 = bounded_coordinates(*prior, s.base).theta;
  const Index d = static_cast<Index>(s.dimension());
  Matrix m(theta0.size(), d);
  for (Index k = 0; k < d; ++k) {
    m.col(k) = bounded_coordinates(*prior, prior->base +
                                               s.directions.elements[static_cast<std::size_t>(k)])
                   .theta;
  }
  Vector c = Vector::Zero(d);
  for (int iter = 0; iter < kProjectionIterations; ++iter) {
    const Vector theta = theta0 + m * c;
    const Vector target = clamp_inside(*prior, theta);
    if ((target - theta).norm() <= 1e-12 * (1.0 + theta.norm())) break;
    if (d == 0) break;
    c = least_squares(m, target - theta0, kDefaultRankTol).x;
  }
  return s.point(c);
}

}  // namespace

std::vector<Matrix> sample_consistent(const AffineMatrixSet& s, const PriorKnowledge& pk,
                                      int count, std::uint64_t seed, double gap_tol) {
  if (count < 2) throw PreconditionError("sample_consistent needs count >= 2");
  if (pk.n() != s.n()) throw DimensionError("prior and candidate set differ in dimension");
  const auto* prior = pk.bounded_affine();
  const Matrix center = sampling_center(s, pk);
  const Index d = static_cast<Index>(s.dimension());

  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    std::mt19937_64 rng(sample_seed(seed, k));
    std::normal_distribution<double> normal(0.0, 1.0);
    double scale = 1.0;
    bool accepted = false;
    for (int attempt = 0; attempt < kTriesPerSample && !accepted; ++attempt) {
      if (attempt > 0 && attempt % kTriesPerScale == 0) scale *= 0.5;
      Matrix x = center;
      for (Index i = 0; i < d; ++i) {
        x += scale * normal(rng) * s.directions.elements[static_cast<std::size_t>(i)];
      }
      if (prior != nullptr && !inside_bounds(*prior, x)) continue;
      if (!usable(x, gap_tol)) continue;
      out.push_back(std::move(x));
      accepted = true;
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "could not draw sample " << k << " of the candidate set within "
          << kTriesPerSample << " tries; the set has no usable member";
      throw DegenerateSetError(msg.str());
    }
  }
  return out;
}

OracleResult brute_force_informative(const AffineMatrixSet& s, const PriorKnowledge& pk,
                                     const Matrix& q, int count, std::uint64_t seed,
                                     double agree_tol, double gap_tol) {
  const std::vector<Matrix> members = sample_consistent(s, pk, count, seed, gap_tol);
  std::vector<std::size_t> solved_index;
  std::vector<Matrix> solutions;
  for (std::size_t k = 0; k < members.size(); ++k) {
    try {
      solutions.push_back(solve_lyapunov(members[k], q, gap_tol));
      solved_index.push_back(k);
    } catch (const NumericalError&) {
      // ill-conditioned member; its solution is not trustworthy
    }
  }
  if (solutions.size() < 2) {
    throw DegenerateSetError("fewer than two sampled members could be solved");
  }

  OracleResult result;
  result.samples = static_cast<int>(solutions.size());
  std::size_t best_i = 0, best_j = 0;
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    for (std::size_t j = i + 1; j < solutions.size(); ++j) {
      const double dist = (solutions[i] - solutions[j]).norm();
      if (dist > result.max_distance) {
        result.max_distance = dist;
        best_i = i;
        best_j = j;
      }
    }
  }
  result.agree = result.max_distance <= agree_tol * (1.0 + q.norm());
  if (result.agree) {
    result.solution = solutions.front();
  } else {
    result.witness = Witness{members[solved_index[best_i]], members[solved_index[best_j]],
                             solutions[best_i], solutions[best_j], result.max_distance};
  }
  return result;
}

}  // namespace lyapinf
