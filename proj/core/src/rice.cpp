// Copyright 2026 The trigzeros Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trigzeros/rice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trigzeros/errors.hpp"
#include "trigzeros/kernels.hpp"

namespace trigzeros {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_enlarged_diagonal(std::span<const double> t, double epsilon) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (std::abs(t[i] - t[j]) < epsilon) return true;
    }
  }
  return false;
}

}  // namespace

double mean_zeros(Interval interval) {
  if (interval.hi < interval.lo) throw InvalidArgument("mean_zeros needs lo <= hi");
  return interval.length() / (kPi * std::numbers::sqrt3);
}

ConditionalGaussian conditional_at_zeros(std::span<const double> t) {
  const Eigen::Index m = static_cast<Eigen::Index>(t.size());
  if (m == 0) throw InvalidArgument("conditional_at_zeros needs at least one point");
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (std::abs(t[i] - t[j]) < 1e-6) {
        throw InvalidArgument("conditional_at_zeros needs pairwise gaps >= 1e-6");
      }
    }
  }
  const CovMatrices cov = build_cov(t);
  // The leading m x m block of the full factor is the factor of Sigma11, and
  // the trailing block is the factor of the Schur complement.
  const Eigen::MatrixXd& l = cov.sigma_chol;
  ConditionalGaussian out;
  out.t.assign(t.begin(), t.end());
  const Eigen::MatrixXd l22 = l.bottomRightCorner(m, m);
  out.cond_cov = l22 * l22.transpose();
  double log_det_half = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) log_det_half += std::log(l(i, i));
  out.marginal_density_at_zero =
      std::exp(-0.5 * static_cast<double>(m) * std::log(2.0 * kPi) - log_det_half);
  return out;
}

double expected_abs_product(double s1, double s2, double rho) {
  rho = std::clamp(rho, -1.0, 1.0);
  return s1 * s2 * (2.0 / kPi) * (std::sqrt(1.0 - rho * rho) + rho * std::asin(rho));
}

double two_point_intensity(double t1, double t2) {
  if (std::abs(t1 - t2) < 1e-6) {
    throw NearSingular("two_point_intensity needs |t1 - t2| >= 1e-6", 0.0, -1);
  }
  const double t[2] = {t1, t2};
  const ConditionalGaussian cg = conditional_at_zeros(t);
  const double s1 = std::sqrt(cg.cond_cov(0, 0)), s2 = std::sqrt(cg.cond_cov(1, 1));
  const double rho = cg.cond_cov(0, 1) / (s1 * s2);
  return cg.marginal_density_at_zero * expected_abs_product(s1, s2, rho);
}

SecondMomentResult second_factorial_moment(Interval interval, double epsilon, int max_cells) {
  const double length = interval.length();
  if (!(epsilon > 0.0) || !(epsilon < length / 4.0)) {
    throw InvalidArgument("second_factorial_moment needs 0 < epsilon < |I| / 4");
  }
  // Region t1 + epsilon <= t2 <= hi mapped onto the unit square; the other
  // half of I^2 follows by symmetry.
  const double span1 = length - epsilon;
  const auto integrand = [&](double x, double y) {
    const double t1 = interval.lo + x * span1;
    const double width = interval.hi - t1 - epsilon;
    const double t2 = t1 + epsilon + y * width;
    return 2.0 * two_point_intensity(t1, t2) * span1 * width;
  };
  const QuadResult q =
      integrate_adaptive_2d(integrand, Rect{0.0, 1.0, 0.0, 1.0}, 0.0, 1e-6, max_cells);
  SecondMomentResult out;
  out.value = q.value;
  out.error = q.error;
  out.converged = q.converged;
  out.evaluations = q.evaluations;
  out.excluded_area = length * length - span1 * span1;
  out.note =
      "pairs closer than epsilon are excluded; the truncation remainder is "
      "O(epsilon^(1/5)) with an unknown constant and is not added";
  if (!q.converged) out.note += "; quadrature budget exhausted, value is partial";
  return out;
}

FactorialMomentMc m_factorial_moment_mc(Interval interval, int m, double epsilon, int n_nodes,
                                        int n_inner, RngStream& stream) {
  if (m < 2 || m > 4) throw InvalidArgument("m_factorial_moment_mc supports 2 <= m <= 4");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  if (!(interval.hi > interval.lo)) throw InvalidArgument("interval must have positive length");
  if (n_nodes < 2 || n_inner < 1) throw InvalidArgument("need n_nodes >= 2 and n_inner >= 1");

  const double volume = std::pow(interval.length(), m);
  std::vector<double> t(m);
  std::vector<double> z(m), y(m);
  long long trials = 0;
  int accepted = 0;
  int singular = 0;
  double sum = 0.0, sum_sq = 0.0, inner_sum = 0.0;
  constexpr double kMinAcceptance = 0.01;

  while (accepted < n_nodes) {
    ++trials;
    for (double& ti : t) ti = stream.uniform(interval.lo, interval.hi);
    if (trials >= 1000 && accepted < kMinAcceptance * static_cast<double>(trials)) {
      throw EpsilonTooLarge("more than 99% of proposals fall in the epsilon-enlarged diagonals",
                            static_cast<double>(accepted) / static_cast<double>(trials));
    }
    if (in_enlarged_diagonal(t, epsilon)) continue;
    ++accepted;

    ConditionalGaussian cg;
    try {
      cg = conditional_at_zeros(t);
    } catch (const NearSingular&) {
      // Clustered nodes whose covariance is below double resolution; the
      // m-point intensity vanishes there, so the node contributes zero.
      ++singular;
      continue;
    }
    CholeskyFactor chol = cholesky_tracked(cg.cond_cov);
    if (!chol.ok) {
      Eigen::MatrixXd jittered = cg.cond_cov;
      jittered.diagonal().array() += 1e-14;
      chol = cholesky_tracked(jittered);
      if (!chol.ok) {
        throw NearSingular("conditional derivative covariance is not positive semidefinite",
                           chol.min_pivot, chol.min_index);
      }
    }
    double inner = 0.0;
    for (int r = 0; r < n_inner; ++r) {
      for (int i = 0; i < m; ++i) z[i] = stream.gaussian();
      double prod = 1.0;
      for (int i = 0; i < m; ++i) {
        double yi = 0.0;
        for (int k = 0; k <= i; ++k) yi += chol.lower(i, k) * z[k];
        prod *= std::abs(yi);
      }
      inner += prod;
    }
    inner /= n_inner;
    inner_sum += inner;
    const double g = volume * cg.marginal_density_at_zero * inner;
    sum += g;
    sum_sq += g * g;
  }

  FactorialMomentMc out;
  const double n = static_cast<double>(trials);
  out.estimate = sum / n;
  const double var = std::max(0.0, (sum_sq / n - out.estimate * out.estimate) * n / (n - 1.0));
  out.se = std::sqrt(var / n);
  out.acceptance_rate = accepted / n;
  out.mean_inner = accepted > singular ? inner_sum / (accepted - singular) : 0.0;
  out.trials = trials;
  out.nodes = accepted;
  out.singular_nodes = singular;
  return out;
}

}  // namespace trigzeros
