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

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace trigzeros {

// r_N(x) = (1/N) sum_{n=1}^N cos(n x / N) and its first two derivatives
// (order 0, 1, 2). Closed-form Dirichlet kernel away from the origin, power
// series in x for |x| < 1 where the closed form cancels.
double kernel_rN(double x, int N, int order);

// sc(x) = sin(x) / x and its first two derivatives (order 0, 1, 2).
double kernel_sc(double x, int order);

// Covariance of (W(t_1..t_m); W'(t_1..t_m)), values block first.
//   [0,m)x[0,m):  sc(t_i - t_j)
//   [0,m)x[m,2m): E[W(t_i) W'(t_j)] = sc'(t_j - t_i)
//   [m,2m)x[m,2m): -sc''(t_i - t_j)
// gammaN has the same layout with r_N in place of sc.
struct CovMatrices {
  std::vector<double> t;
  Eigen::MatrixXd sigma;
  std::optional<Eigen::MatrixXd> gammaN;
  Eigen::MatrixXd sigma_chol;  // lower factor of sigma
  double min_pivot = 0.0;      // smallest diagonal entry of sigma_chol
  bool extended_precision = false;  // factor computed from quad-precision entries
};

Eigen::MatrixXd sigma_matrix(std::span<const double> t);
Eigen::MatrixXd gamma_matrix(std::span<const double> t, int N);

// Builds sigma (and gammaN if N is given) and certifies sigma by Cholesky.
// Clustered points make sigma too ill-conditioned for double entries; when the
// double factor's smallest pivot is below 1e-4 the factor is recomputed from
// quad-precision entries and rounded. Throws InvalidArgument if two points are closer than 1e-9 and NearSingular
// if a Cholesky pivot falls below 1e-12.
CovMatrices build_cov(std::span<const double> t, std::optional<int> N = std::nullopt);

struct CholeskyFactor {
  Eigen::MatrixXd lower;
  double min_pivot = 0.0;
  int min_index = -1;
  bool ok = false;  // false if a pivot was non-positive; lower is then partial
};

// Unblocked Cholesky that tracks the smallest pivot. Meant for the small
// matrices of the Kac-Rice integrands.
CholeskyFactor cholesky_tracked(const Eigen::MatrixXd& a);

}  // namespace trigzeros
