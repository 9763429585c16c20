// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/error.hpp"
#include "lyapinf/informativity.hpp"
#include "lyapinf/solver.hpp"

#include "support/matrix_util.hpp"
#include "support/random_instances.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lyapinf {
namespace {

using testing::elementary;
using testing::mat;
using testing::matrices_near;
using testing::random_instance;
using testing::random_matrix;
using testing::relative_difference;

const Matrix kQ = mat({{2, 3}, {-3, 0}});

// Candidate set of the running example with the prior: {[[-1, a], [0, -2]]}.
AffineMatrixSet example_set() {
  return AffineMatrixSet{mat({{-1, 0}, {0, -2}}), SubspaceBasis{2, 2, {elementary(2, 0, 1)}}};
}

// Same data without prior: {[[-1, a], [0, b]]}.
AffineMatrixSet data_only_set() {
  return AffineMatrixSet{mat({{-1, 0}, {0, 0}}),
                         SubspaceBasis{2, 2, {elementary(2, 0, 1), elementary(2, 1, 1)}}};
}

AffineMatrixSet singleton(const Matrix& a) {
  return AffineMatrixSet{a, SubspaceBasis{a.rows(), a.cols(), {}}};
}

TEST(KernelSet, SingleNilpotentDirection) {
  const KernelSet k = kernel_set(2, {elementary(2, 0, 1)});
  ASSERT_EQ(k.basis.dimension(), 2u);
  for (const Matrix& p : k.basis.elements) {
    EXPECT_NEAR(p(1, 1), 0.0, 1e-12);
    EXPECT_NEAR(p(0, 1), -p(1, 0), 1e-12);
  }
}

TEST(KernelSet, NoDirectionsIsWholeSpace) {
  EXPECT_EQ(kernel_set(3, {}).basis.dimension(), 9u);
}

TEST(KernelSet, IdentityDirectionIsZero) {
  EXPECT_TRUE(kernel_set(2, {Matrix::Identity(2, 2)}).basis.empty());
}

TEST(KernelSet, ElementsAnnihilateEveryDirection) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 30; ++i) {
    const auto inst = random_instance(rng);
    const KernelSet k = kernel_set(inst.n, inst.set.directions.elements);
    for (const Matrix& p : k.basis.elements) {
      for (const Matrix& a : inst.set.directions.elements) {
        EXPECT_LE((a * p + p * a.transpose()).norm(), 1e-8);
      }
    }
  }
}

TEST(CheckSystem, RunningExampleIsInformative) {
  const InformativityVerdict v = check_informativity_system(example_set(), kQ);
  ASSERT_EQ(v.tag, VerdictTag::Informative);
  EXPECT_TRUE(matrices_near(*v.solution, mat({{1, 1}, {-1, 0}}), 1e-10));
  EXPECT_LE(v.residual, v.threshold);
}

TEST(CheckSystem, DataAloneAreNotInformative) {
  const InformativityVerdict v = check_informativity_system(data_only_set(), kQ);
  EXPECT_EQ(v.tag, VerdictTag::NotInformative);
  EXPECT_FALSE(v.solution.has_value());
  EXPECT_GT(v.residual, v.threshold);
}

TEST(CheckSystem, SingletonSolvesDirectly) {
  const Matrix a = mat({{-1, 1}, {0, -2}});
  const InformativityVerdict v = check_informativity_system(singleton(a), kQ);
  ASSERT_EQ(v.tag, VerdictTag::Informative);
  EXPECT_TRUE(matrices_near(*v.solution, mat({{1, 1}, {-1, 0}}), 1e-12));
}

TEST(CheckSystem, SingletonOutsideAnIsAssumptionViolated) {
  const InformativityVerdict v = check_informativity_system(singleton(mat({{1, 0}, {0, -1}})), kQ);
  EXPECT_EQ(v.tag, VerdictTag::AssumptionViolated);
}

TEST(CheckSystem, ShapeMismatch) {
  EXPECT_THROW(check_informativity_system(example_set(), Matrix::Zero(3, 3)), DimensionError);
}

TEST(CheckSubspace, RunningExampleIsInformative) {
  const InformativityVerdict v = check_informativity_subspace(example_set(), kQ);
  ASSERT_EQ(v.tag, VerdictTag::Informative);
  EXPECT_TRUE(matrices_near(*v.solution, mat({{1, 1}, {-1, 0}}), 1e-10));
}

TEST(CheckSubspace, IdentityQIsOutsideTheImage) {
  EXPECT_EQ(check_informativity_subspace(example_set(), Matrix::Identity(2, 2)).tag,
            VerdictTag::NotInformative);
}

TEST(CheckSubspace, SingletonAlwaysInformative) {
  std::mt19937_64 rng(42);
  const Matrix a = testing::random_An_matrix(rng, 3);
  EXPECT_EQ(check_informativity_subspace(singleton(a), random_matrix(rng, 3, 3)).tag,
            VerdictTag::Informative);
}

TEST(CheckSpecial, FullBasisIsPlainSolve) {
  std::mt19937_64 rng(43);
  const Matrix a = testing::random_An_matrix(rng, 2);
  const Matrix q = random_matrix(rng, 2, 2);
  const InformativityVerdict v = check_informativity_special(Matrix::Identity(2, 2), a, q);
  ASSERT_EQ(v.tag, VerdictTag::Informative);
  EXPECT_LE(relative_difference(*v.solution, solve_lyapunov(a, q)), 1e-10);
}

TEST(CheckSpecial, OneDimensionalImage) {
  const Matrix z = mat({{1}, {0}});
  const Matrix a0 = mat({{-1, 0}, {0, -2}});
  const InformativityVerdict v = check_informativity_special(z, a0, mat({{2, 0}, {0, 0}}));
  ASSERT_EQ(v.tag, VerdictTag::Informative);
  EXPECT_TRUE(matrices_near(*v.solution, mat({{1, 0}, {0, 0}}), 1e-12));
  EXPECT_EQ(check_informativity_special(z, a0, Matrix::Identity(2, 2)).tag,
            VerdictTag::NotInformative);
}

TEST(CheckSpecial, RequiresOrthonormalZ) {
  EXPECT_THROW(check_informativity_special(mat({{2}, {0}}), -Matrix::Identity(2, 2),
                                           Matrix::Identity(2, 2)),
               PreconditionError);
}

TEST(Decide, NilpotentSetIsAssumptionViolated) {
  const AffineMatrixSet s{Matrix::Zero(2, 2), SubspaceBasis{2, 2, {elementary(2, 0, 1)}}};
  EXPECT_EQ(decide_informativity(s, kQ).tag, VerdictTag::AssumptionViolated);
}

TEST(Decide, RunningExample) {
  const InformativityVerdict v = decide_informativity(example_set(), kQ);
  ASSERT_EQ(v.tag, VerdictTag::Informative);
  EXPECT_TRUE(matrices_near(*v.solution, mat({{1, 1}, {-1, 0}}), 1e-10));
}

TEST(Properties, SystemAndSubspaceCheckersAgree) {
  std::mt19937_64 rng(44);
  int informative = 0;
  for (int i = 0; i < 250; ++i) {
    const auto inst = random_instance(rng);
    const auto a = check_informativity_system(inst.set, inst.q);
    const auto b = check_informativity_subspace(inst.set, inst.q);
    ASSERT_EQ(a.tag, b.tag) << "instance " << i;
    if (a.tag == VerdictTag::Informative) {
      ++informative;
      EXPECT_LE(relative_difference(*a.solution, *b.solution), 1e-8);
    }
  }
  EXPECT_GT(informative, 50);
  EXPECT_LT(informative, 240);
}

TEST(Properties, InformativeSolutionSolvesEveryMember) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 60; ++i) {
    const auto inst = random_instance(rng);
    const auto v = check_informativity_system(inst.set, inst.q);
    if (v.tag != VerdictTag::Informative) continue;
    std::normal_distribution<double> normal;
    for (int k = 0; k < 50; ++k) {
      Vector c(static_cast<Index>(inst.set.dimension()));
      for (Index j = 0; j < c.size(); ++j) c(j) = normal(rng);
      const Matrix a = inst.set.point(c);
      if (!in_An(a)) continue;
      EXPECT_LE(lyapunov_residual(a, *v.solution, inst.q), 1e-7 * (1 + inst.q.norm()));
    }
  }
}

TEST(Properties, InformativeQFromKernelIsAccepted) {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 80; ++i) {
    const auto inst = random_instance(rng);
    if (!inst.q_informative) continue;
    EXPECT_EQ(check_informativity_system(inst.set, inst.q).tag, VerdictTag::Informative);
  }
}

TEST(Properties, VerdictInvariantUnderBasisRotation) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 60; ++i) {
    const auto inst = random_instance(rng);
    const Index d = static_cast<Index>(inst.set.dimension());
    if (d < 2) continue;
    const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, d, d));
    const Matrix rotation = qr.householderQ();
    const Matrix rotated = inst.set.directions.as_columns() * rotation;
    const AffineMatrixSet s2{inst.set.base,
                             SubspaceBasis::from_columns(rotated, inst.n, inst.n)};
    const auto a = check_informativity_system(inst.set, inst.q);
    const auto b = check_informativity_system(s2, inst.q);
    ASSERT_EQ(a.tag, b.tag);
    if (a.solution) {
      EXPECT_LE(relative_difference(*b.solution, *a.solution), 1e-8);
    }
  }
}

TEST(Properties, SpecialCaseMatchesGeneralChecker) {
  std::mt19937_64 rng(48);
  for (int i = 0; i < 80; ++i) {
    const auto inst = random_instance(rng, testing::PriorKind::SubspaceAction);
    const SubspaceActionPrior& prior = *inst.prior.subspace_action();
    Matrix stacked(inst.n, inst.data.states().cols() + prior.y0.cols());
    stacked << inst.data.states(), prior.y0;
    const Matrix z = column_space_basis(stacked, kDefaultRankTol);
    const Matrix a0 = pick_member_in_An(inst.set, kDefaultGapTol, 3);
    EXPECT_EQ(check_informativity_special(z, a0, inst.q).tag,
              check_informativity_system(inst.set, inst.q).tag);
  }
}

TEST(VerdictTag, Names) {
  EXPECT_STREQ(to_string(VerdictTag::Informative), "informative");
  EXPECT_STREQ(to_string(VerdictTag::NotInformative), "not_informative");
  EXPECT_STREQ(to_string(VerdictTag::AssumptionViolated), "assumption_violated");
}

}  // namespace
}  // namespace lyapinf
