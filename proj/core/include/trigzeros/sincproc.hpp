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

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "trigzeros/quadrature.hpp"
#include "trigzeros/rng.hpp"
#include "trigzeros/zerocount.hpp"

namespace trigzeros {

// Random-frequency approximation of the sinc-covariance process W:
//   W(t) = M^{-1/2} sum_k [a_k cos(l_k t) + b_k sin(l_k t)],
// l_k iid uniform on [0, 1], a_k, b_k iid standard normal. Averaging
// cos(l (t - s)) over the flat spectral density gives sc(t - s); conditionally
// on the frequencies the path is exactly Gaussian.
struct SpectralPath {
  std::vector<double> freqs;
  std::vector<double> coeff_a;
  std::vector<double> coeff_b;

  int size() const noexcept { return static_cast<int>(freqs.size()); }
  double value(double t) const { return derivative(t, 0); }
  double derivative(double t, int k) const;
};

constexpr int kDefaultSpectralFrequencies = 512;

SpectralPath sample_spectral(int M, RngStream& stream);

// Scan adapter: grid sampling by rotation recurrence, re-anchored with a
// direct sincos every 32 points.
class SpectralTarget final : public ScanTarget {
 public:
  explicit SpectralTarget(const SpectralPath& path);
  void sample(std::span<const double> grid, std::span<double> values,
              std::span<double> slopes) const override;
  std::pair<double, double> value_slope(double t) const override;
  double bandwidth() const override { return bandwidth_; }

 private:
  const SpectralPath& path_;
  double norm_;
  double bandwidth_;
};

ZeroReport count_zeros_W(const SpectralPath& path, Interval interval,
                         const ScanOptions& opts = {});

// Exact Gaussian sample of W on a finite grid: values = L z with L L^T the sinc
// covariance (plus jitter) on the grid.
struct GridPath {
  std::vector<double> grid;
  std::vector<double> values;
  std::shared_ptr<const Eigen::MatrixXd> chol;  // lower factor
  double jitter = 0.0;                          // diagonal jitter that was needed
};

// Factorizes the sinc covariance once and draws any number of paths.
class GridSampler {
 public:
  // Throws InvalidArgument for an unsorted grid or a gap below 1e-6, and
  // NearSingular if Cholesky fails even with the largest jitter (1e-10).
  explicit GridSampler(std::vector<double> grid);

  const std::vector<double>& grid() const noexcept { return grid_; }
  double jitter() const noexcept { return jitter_; }
  const Eigen::MatrixXd& lower() const noexcept { return *chol_; }

  GridPath sample(RngStream& stream) const;
  // Column r holds the path drawn from stream (seed, first_stream + r); column
  // r equals sample(make_stream(seed, first_stream + r)).values.
  Eigen::MatrixXd sample_block(std::uint64_t seed, std::uint64_t first_stream, int count) const;

 private:
  std::vector<double> grid_;
  std::shared_ptr<const Eigen::MatrixXd> chol_;
  double jitter_ = 0.0;
};

GridPath sample_grid(std::vector<double> grid, RngStream& stream);

// Sign changes between consecutive samples; a zero sample counts as positive.
int count_sign_changes(std::span<const double> values);

}  // namespace trigzeros
