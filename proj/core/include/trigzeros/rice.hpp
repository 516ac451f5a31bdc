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

#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trigzeros/quadrature.hpp"
#include "trigzeros/rng.hpp"

namespace trigzeros {

// E[Z_W(I)] = |I| sqrt(-sc''(0)) / pi = |I| / (pi sqrt 3).
double mean_zeros(Interval interval);

// Law of (W'(t_1..t_m)) given W(t_1..t_m) = 0, plus the density of the values
// at the origin.
struct ConditionalGaussian {
  std::vector<double> t;
  Eigen::MatrixXd cond_cov;  // Sigma22 - Sigma21 Sigma11^{-1} Sigma12
  double marginal_density_at_zero = 0.0;  // (2 pi)^{-m/2} det(Sigma11)^{-1/2}
};

// Needs pairwise gaps >= 1e-6 (InvalidArgument otherwise); NearSingular is
// propagated from the covariance factorization.
ConditionalGaussian conditional_at_zeros(std::span<const double> t);

// E|Y1 Y2| for a centered pair with standard deviations s1, s2 and
// correlation rho: s1 s2 (2/pi) (sqrt(1 - rho^2) + rho asin(rho)).
double expected_abs_product(double s1, double s2, double rho);

// Kac-Rice second-order intensity of the zeros of W at (t1, t2). Throws
// NearSingular when |t1 - t2| < 1e-6.
double two_point_intensity(double t1, double t2);

struct SecondMomentResult {
  double value = 0.0;          // integral over I^2 minus the epsilon band
  double error = 0.0;          // quadrature error estimate
  double excluded_area = 0.0;  // area of the band |t1 - t2| < epsilon inside I^2
  bool converged = false;      // false: partial result, budget exhausted
  int evaluations = 0;
  std::string note;            // truncation caveat (remainder is not added)
};

// Adaptive 2D quadrature of two_point_intensity over I^2 minus the epsilon
// band, to 1e-6 relative tolerance. Needs 0 < epsilon < |I| / 4.
SecondMomentResult second_factorial_moment(Interval interval, double epsilon,
                                           int max_cells = 20000);

struct FactorialMomentMc {
  double estimate = 0.0;
  double se = 0.0;
  double acceptance_rate = 0.0;
  double mean_inner = 0.0;  // average of the inner estimate of E prod |Y_i|
  long long trials = 0;
  int nodes = 0;
  int singular_nodes = 0;  // accepted nodes whose covariance was not resolvable
};

// Monte Carlo over t uniform on I^m minus the epsilon-enlarged diagonals
// (rejection), with the inner expectation E prod |Y_i| estimated from n_inner
// draws of the conditional law. 2 <= m <= 4. Throws EpsilonTooLarge when fewer
// than 1% of the proposals are accepted. Accepted nodes whose covariance
// factorization is numerically singular contribute zero and are counted.
FactorialMomentMc m_factorial_moment_mc(Interval interval, int m, double epsilon, int n_nodes,
                                        int n_inner, RngStream& stream);

}  // namespace trigzeros
