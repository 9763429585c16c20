// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lyapinf Authors

#include "lyapinf/trajgen.hpp"

#include "lyapinf/error.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace lyapinf {

Matrix matrix_exponential(const Matrix& a, double t) {
  require_square(a, "matrix_exponential input");
  require_finite(a, "matrix_exponential input");
  if (!std::isfinite(t)) throw NumericalError("matrix_exponential: time is not finite");
  const Matrix scaled = a * t;
  Matrix out = scaled.exp();
  if (!out.allFinite()) {
    std::ostringstream msg;
    msg << "matrix exponential overflowed (||A t||_F = " << scaled.norm() << ")";
    throw NumericalError(msg.str());
  }
  return out;
}

Dataset simulate_trajectory(const Matrix& a, const Vector& x0,
                            std::span<const double> times) {
  require_square(a, "system matrix");
  if (x0.size() != a.rows()) {
    throw DimensionError("initial state length does not match the system matrix");
  }
  if (times.empty()) throw InputError("simulation needs at least one sample time");
  std::vector<Sample> samples;
  samples.reserve(times.size());
  for (double t : times) {
    Vector x = matrix_exponential(a, t) * x0;
    Vector dx = a * x;
    samples.push_back(Sample{t, std::move(x), std::move(dx)});
  }
  return Dataset(a.rows(), std::move(samples), DerivativeSource::Exact);
}

namespace {

// Weights w with f'(t[at]) ~ sum_j w_j f(t[j]), from differentiating the
// Lagrange interpolant through the given nodes.
template <std::size_t K>
std::array<double, K> derivative_weights(const std::array<double, K>& t,
                                         std::size_t at) {
  std::array<double, K> w{};
  for (std::size_t j = 0; j < K; ++j) {
    double denom = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
      if (k != j) denom *= t[j] - t[k];
    }
    double numer = 0.0;
    for (std::size_t m = 0; m < K; ++m) {
      if (m == j) continue;
      double prod = 1.0;
      for (std::size_t k = 0; k < K; ++k) {
        if (k != j && k != m) prod *= t[at] - t[k];
      }
      numer += prod;
    }
    w[j] = numer / denom;
  }
  return w;
}

// Largest componentwise divided difference of the given order over samples
// [first, first + order].
double divided_difference(const std::vector<Sample>& s, std::size_t first,
                          std::size_t order) {
  std::vector<Vector> table;
  for (std::size_t k = 0; k <= order; ++k) table.push_back(s[first + k].x);
  for (std::size_t level = 1; level <= order; ++level) {
    for (std::size_t k = 0; k + level <= order; ++k) {
      table[k] = (table[k + 1] - table[k]) /
                 (s[first + k + level].t - s[first + k].t);
    }
  }
  return table[0].cwiseAbs().maxCoeff();
}

}  // namespace

Dataset estimate_derivatives(const Dataset& ds, DifferenceScheme scheme) {
  const auto& in = ds.samples();
  const std::size_t count = in.size();
  const std::size_t needed = scheme == DifferenceScheme::Central ? 3 : 2;
  if (count < needed) {
    throw InputError("finite differences need at least " + std::to_string(needed) +
                     " samples, got " + std::to_string(count));
  }

  std::vector<Sample> out(in.begin(), in.end());
  double truncation = 0.0;

  // Third-derivative magnitude from the closest four samples, when available.
  auto third_derivative = [&](std::size_t i) {
    if (count < 4) return 0.0;
    const std::size_t first = std::min(i > 0 ? i - 1 : 0, count - 4);
    return 6.0 * divided_difference(in, first, 3);
  };

  for (std::size_t i = 0; i < count; ++i) {
    const bool at_end = (i == 0 || i + 1 == count);
    if (at_end && scheme == DifferenceScheme::ForwardBackwardEnds) {
      const std::size_t a = (i == 0) ? 0 : count - 2;
      const double h = in[a + 1].t - in[a].t;
      out[i].dx = (in[a + 1].x - in[a].x) / h;
      if (count >= 3) {
        const std::size_t first = (i == 0) ? 0 : count - 3;
        const double second = 2.0 * divided_difference(in, first, 2);
        truncation = std::max(truncation, 0.5 * second * h);
      }
      continue;
    }
    // Three consecutive nodes containing i, centered when possible.
    const std::size_t first = (i == 0) ? 0 : (i + 1 == count ? count - 3 : i - 1);
    const std::array<double, 3> t{in[first].t, in[first + 1].t, in[first + 2].t};
    const std::size_t at = i - first;
    const auto w = derivative_weights(t, at);
    out[i].dx = w[0] * in[first].x + w[1] * in[first + 1].x + w[2] * in[first + 2].x;
    double node_product = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (k != at) node_product *= t[at] - t[k];
    }
    truncation = std::max(truncation, third_derivative(i) / 6.0 * std::abs(node_product));
  }
  return Dataset(ds.n(), std::move(out), DerivativeSource::Approximate, truncation);
}

}  // namespace lyapinf
