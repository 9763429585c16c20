// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "random_instances.hpp"

#include "lyapinf/informativity.hpp"
#include "lyapinf/lyapcore.hpp"

#include <algorithm>
#include <stdexcept>

namespace lyapinf::testing {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Dataset random_data(std::mt19937_64& rng, const Matrix& a) {
  const Index n = a.rows();
  const Index k = pick(rng, 0, static_cast<int>(n));
  std::vector<Sample> samples;
  if (k == 0) {
    samples.push_back(Sample{0.0, Vector::Zero(n), Vector::Zero(n)});
    return Dataset(n, samples);
  }
  const Matrix basis = random_matrix(rng, n, k);
  const int count = static_cast<int>(k) + pick(rng, 0, 2);
  for (int i = 0; i < count; ++i) {
    Vector x = basis * random_matrix(rng, k, 1);
    Vector dx = a * x;
    samples.push_back(Sample{0.1 * i, std::move(x), std::move(dx)});
  }
  return Dataset(n, samples);
}

PriorKnowledge random_bounded(std::mt19937_64& rng, const Matrix& a) {
  const Index n = a.rows();
  for (;;) {
    const int p = pick(rng, 1, static_cast<int>(n * n));
    std::vector<Matrix> dirs;
    const bool elementary = pick(rng, 0, 1) == 0;
    std::vector<Index> cells(static_cast<std::size_t>(n * n));
    for (Index i = 0; i < n * n; ++i) cells[static_cast<std::size_t>(i)] = i;
    std::shuffle(cells.begin(), cells.end(), rng);
    for (int i = 0; i < p; ++i) {
      if (elementary) {
        Matrix e = Matrix::Zero(n, n);
        e(cells[static_cast<std::size_t>(i)] % n, cells[static_cast<std::size_t>(i)] / n) = 1.0;
        dirs.push_back(std::move(e));
      } else {
        dirs.push_back(random_matrix(rng, n, n));
      }
    }
    BoundedAffinePrior prior;
    prior.base = a;
    for (const Matrix& d : dirs) {
      const double theta = uniform(rng, -1.0, 1.0);
      prior.base -= theta * d;
      Interval b;
      if (pick(rng, 0, 2) > 0) b.lower = theta - uniform(rng, 0.5, 2.0);
      if (pick(rng, 0, 2) > 0) b.upper = theta + uniform(rng, 0.5, 2.0);
      prior.bounds.push_back(b);
    }
    prior.directions = std::move(dirs);
    try {
      return PriorKnowledge(n, std::move(prior));
    } catch (const std::exception&) {
      // dependent random directions; draw again
    }
  }
}

PriorKnowledge random_subspace_action(std::mt19937_64& rng, const Matrix& a) {
  const Index n = a.rows();
  const Index m = pick(rng, 1, static_cast<int>(n) - 1);
  SubspaceActionPrior prior;
  prior.y0 = random_matrix(rng, n, m);
  prior.g = a * prior.y0;
  return PriorKnowledge(n, std::move(prior));
}

}  // namespace

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) m(r, c) = normal(rng);
  }
  return m;
}

Matrix random_An_matrix(std::mt19937_64& rng, Index n, double min_gap) {
  for (;;) {
    Matrix a = random_matrix(rng, n, n);
    if (spectral_gap(a).min_pair_sum >= min_gap) return a;
  }
}

RandomInstance random_instance(std::mt19937_64& rng, PriorKind kind) {
  for (;;) {
    const Index n = pick(rng, 2, 4);
    const Matrix a = random_An_matrix(rng, n);
    if (kind == PriorKind::Any) kind = static_cast<PriorKind>(pick(rng, 0, 2));
    Dataset data = random_data(rng, a);
    PriorKnowledge prior = PriorKnowledge::unconstrained(n);
    if (kind == PriorKind::BoundedAffine) prior = random_bounded(rng, a);
    if (kind == PriorKind::SubspaceAction) prior = random_subspace_action(rng, a);

    auto set = consistent_set(data, prior);
    if (!set) throw std::logic_error("random instance has an empty candidate set");

    RandomInstance inst{n, a, std::move(data), std::move(prior), *set, Matrix(), false};
    inst.q_informative = pick(rng, 0, 1) == 0;
    if (inst.q_informative) {
      const KernelSet k = kernel_set(n, set->directions.elements);
      if (k.basis.empty()) {
        inst.q_informative = false;
      } else {
        Matrix p = Matrix::Zero(n, n);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (const Matrix& e : k.basis.elements) p += normal(rng) * e;
        inst.q = -(a * p + p * a.transpose());
      }
    }
    if (!inst.q_informative) inst.q = random_matrix(rng, n, n);
    if (inst.q.norm() < 1e-3) continue;
    return inst;
  }
}

double relative_difference(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / (1.0 + b.norm());
}

}  // namespace lyapinf::testing
