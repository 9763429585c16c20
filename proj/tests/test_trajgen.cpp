// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/error.hpp"
#include "lyapinf/trajgen.hpp"

#include "support/matrix_util.hpp"
#include "support/random_instances.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lyapinf {
namespace {

using testing::mat;
using testing::matrices_near;
using testing::random_matrix;

const Matrix kA = mat({{-1, 1}, {0, -2}});

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

TEST(MatrixExponential, ZeroIsIdentity) {
  EXPECT_TRUE(matrices_near(matrix_exponential(Matrix::Zero(3, 3), 1.7), Matrix::Identity(3, 3),
                            1e-15));
}

TEST(MatrixExponential, Diagonal) {
  EXPECT_TRUE(matrices_near(matrix_exponential(mat({{-1, 0}, {0, -2}}), 1.0),
                            mat({{std::exp(-1.0), 0}, {0, std::exp(-2.0)}}), 1e-14));
}

TEST(MatrixExponential, RunningExampleTrajectory) {
  const Vector x = matrix_exponential(kA, 1.0) * v2(1, 0);
  EXPECT_NEAR(x(0), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(x(1), 0.0, 1e-14);
}

TEST(MatrixExponential, NilpotentClosedForm) {
  EXPECT_TRUE(matrices_near(matrix_exponential(mat({{0, 1}, {0, 0}}), 2.5), mat({{1, 2.5}, {0, 1}}),
                            1e-14));
}

TEST(MatrixExponential, Semigroup) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const Index n = 1 + i % 5;
    const Matrix a = random_matrix(rng, n, n);
    const double s = unit(rng), t = unit(rng);
    const Matrix whole = matrix_exponential(a, s + t);
    EXPECT_LE((whole - matrix_exponential(a, s) * matrix_exponential(a, t)).norm(),
              1e-9 * whole.norm());
  }
}

TEST(MatrixExponential, NonFiniteInput) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = INFINITY;
  EXPECT_THROW(matrix_exponential(a, 1.0), InputError);
}

TEST(SimulateTrajectory, RunningExample) {
  const std::vector<double> times{0, 0.5, 1.0, 1.5};
  const Dataset ds = simulate_trajectory(kA, v2(1, 0), times);
  ASSERT_EQ(ds.size(), 4u);
  for (const Sample& s : ds.samples()) {
    EXPECT_NEAR(s.x(0), std::exp(-s.t), 1e-14);
    EXPECT_NEAR(s.x(1), 0.0, 1e-14);
    EXPECT_NEAR((*s.dx)(0), -std::exp(-s.t), 1e-14);
    EXPECT_NEAR((*s.dx)(1), 0.0, 1e-14);
  }
  EXPECT_FALSE(ds.approximate());
}

TEST(SimulateTrajectory, ZeroInitialState) {
  const std::vector<double> times{0, 1};
  const Dataset ds = simulate_trajectory(kA, Vector::Zero(2), times);
  EXPECT_TRUE(ds.states().isZero(0.0));
  EXPECT_TRUE(ds.derivatives().isZero(0.0));
}

TEST(SimulateTrajectory, SingleTime) {
  const std::vector<double> times{0};
  const Dataset ds = simulate_trajectory(kA, v2(1, 2), times);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_TRUE(matrices_near(*ds.samples()[0].dx, kA * v2(1, 2), 1e-15));
}

TEST(SimulateTrajectory, DerivativesAreExact) {
  std::mt19937_64 rng(32);
  const Matrix a = random_matrix(rng, 3, 3);
  const std::vector<double> times{0, 0.1, 0.7};
  const Dataset ds = simulate_trajectory(a, random_matrix(rng, 3, 1), times);
  EXPECT_LE((ds.derivatives() - a * ds.states()).norm(), 1e-14 * (1 + ds.derivatives().norm()));
}

TEST(SimulateTrajectory, RejectsBadTimes) {
  const std::vector<double> empty;
  EXPECT_THROW(simulate_trajectory(kA, v2(1, 0), empty), InputError);
  const std::vector<double> decreasing{1, 0};
  EXPECT_THROW(simulate_trajectory(kA, v2(1, 0), decreasing), InputError);
  EXPECT_THROW(simulate_trajectory(kA, Vector::Zero(3), std::vector<double>{0}), DimensionError);
}

Dataset states_only(const Dataset& ds) {
  std::vector<Sample> samples;
  for (const Sample& s : ds.samples()) samples.push_back(Sample{s.t, s.x, std::nullopt});
  return Dataset(ds.n(), samples);
}

TEST(EstimateDerivatives, SecondOrderAccuracy) {
  std::vector<double> times;
  for (int k = 0; k < 200; ++k) times.push_back(0.01 * k);
  const Dataset exact = simulate_trajectory(kA, v2(1, 0), times);
  for (auto scheme : {DifferenceScheme::Central, DifferenceScheme::ForwardBackwardEnds}) {
    const Dataset est = estimate_derivatives(states_only(exact), scheme);
    EXPECT_TRUE(est.approximate());
    const double interior =
        (est.derivatives().middleCols(1, 198) - exact.derivatives().middleCols(1, 198))
            .cwiseAbs()
            .maxCoeff();
    EXPECT_LE(interior, 1e-4);
    if (scheme == DifferenceScheme::Central) {
      EXPECT_LE((est.derivatives() - exact.derivatives()).cwiseAbs().maxCoeff(), 1e-4);
    }
    EXPECT_GT(est.truncation_estimate(), 0.0);
  }
}

TEST(EstimateDerivatives, ExactOnQuadratics) {
  // x(t) = x0 + v t + w t^2 on a nonuniform grid.
  const Vector x0 = v2(1, -1), v = v2(2, 3), w = v2(-0.5, 0.25);
  std::vector<Sample> samples;
  for (double t : {0.0, 0.3, 0.5, 1.1, 1.4}) samples.push_back(Sample{t, x0 + v * t + w * t * t, {}});
  const Dataset est = estimate_derivatives(Dataset(2, samples), DifferenceScheme::Central);
  for (const Sample& s : est.samples()) {
    EXPECT_TRUE(matrices_near(*s.dx, v + 2.0 * w * s.t, 1e-12));
  }
  EXPECT_NEAR(est.truncation_estimate(), 0.0, 1e-10);
}

TEST(EstimateDerivatives, LinearTrajectoryWithTwoSamples) {
  const Vector x0 = v2(1, 2), v = v2(-1, 0.5);
  const Dataset ds(2, {Sample{0, x0, {}}, Sample{2, x0 + 2 * v, {}}});
  const Dataset est = estimate_derivatives(ds, DifferenceScheme::ForwardBackwardEnds);
  for (const Sample& s : est.samples()) EXPECT_TRUE(matrices_near(*s.dx, v, 1e-14));
}

TEST(EstimateDerivatives, CentralNeedsThreeSamples) {
  const Dataset ds(2, {Sample{0, v2(1, 0), {}}, Sample{1, v2(0, 1), {}}});
  EXPECT_THROW(estimate_derivatives(ds, DifferenceScheme::Central), InputError);
}

TEST(EstimateDerivatives, OneSampleIsNotEnough) {
  const Dataset ds(2, {Sample{0, v2(1, 0), {}}});
  EXPECT_THROW(estimate_derivatives(ds, DifferenceScheme::ForwardBackwardEnds), InputError);
}

}  // namespace
}  // namespace lyapinf
