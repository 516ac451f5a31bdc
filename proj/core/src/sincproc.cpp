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

#include "trigzeros/sincproc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trigzeros/errors.hpp"
#include "trigzeros/kernels.hpp"

namespace trigzeros {

double SpectralPath::derivative(double t, int k) const {
  if (k < 0) throw InvalidArgument("derivative order must be non-negative");
  double sum = 0.0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double l = freqs[i];
    const double c = std::cos(l * t), s = std::sin(l * t);
    double cs, sn;
    switch (k % 4) {
      case 0: cs = c; sn = s; break;
      case 1: cs = -s; sn = c; break;
      case 2: cs = -c; sn = -s; break;
      default: cs = s; sn = -c; break;
    }
    sum += std::pow(l, k) * (coeff_a[i] * cs + coeff_b[i] * sn);
  }
  return sum / std::sqrt(static_cast<double>(freqs.size()));
}

SpectralPath sample_spectral(int M, RngStream& stream) {
  if (M < 1) throw InvalidArgument("sample_spectral needs M >= 1");
  SpectralPath p;
  p.freqs.resize(M);
  p.coeff_a.resize(M);
  p.coeff_b.resize(M);
  for (double& l : p.freqs) l = stream.uniform();
  for (double& a : p.coeff_a) a = stream.gaussian();
  for (double& b : p.coeff_b) b = stream.gaussian();
  return p;
}

SpectralTarget::SpectralTarget(const SpectralPath& path)
    : path_(path), norm_(1.0 / std::sqrt(static_cast<double>(path.size()))), bandwidth_(0.0) {
  for (double l : path.freqs) bandwidth_ = std::max(bandwidth_, std::abs(l));
  // A constant path still needs a finite scan step.
  bandwidth_ = std::max(bandwidth_, 1e-3);
}

std::pair<double, double> SpectralTarget::value_slope(double t) const {
  double v = 0.0, d = 0.0;
  const auto& l = path_.freqs;
  const auto& a = path_.coeff_a;
  const auto& b = path_.coeff_b;
  for (std::size_t k = 0; k < l.size(); ++k) {
    const double c = std::cos(l[k] * t), s = std::sin(l[k] * t);
    v += a[k] * c + b[k] * s;
    d += l[k] * (b[k] * c - a[k] * s);
  }
  return {v * norm_, d * norm_};
}

void SpectralTarget::sample(std::span<const double> grid, std::span<double> values,
                            std::span<double> slopes) const {
  const std::size_t n = grid.size();
  const std::size_t m = path_.freqs.size();
  bool uniform = n >= 3;
  const double h = uniform ? grid[1] - grid[0] : 0.0;
  for (std::size_t j = 1; uniform && j < n; ++j) {
    if (std::abs((grid[j] - grid[j - 1]) - h) > 1e-9 * std::abs(h)) uniform = false;
  }
  if (!uniform) {
    for (std::size_t j = 0; j < n; ++j) std::tie(values[j], slopes[j]) = value_slope(grid[j]);
    return;
  }

  const auto& l = path_.freqs;
  const auto& a = path_.coeff_a;
  const auto& b = path_.coeff_b;
  std::vector<double> c(m), s(m), rc(m), rs(m);
  for (std::size_t k = 0; k < m; ++k) {
    rc[k] = std::cos(l[k] * h);
    rs[k] = std::sin(l[k] * h);
  }
  constexpr std::size_t kAnchor = 32;
  for (std::size_t j = 0; j < n; ++j) {
    if (j % kAnchor == 0 || j + 1 == n) {
      for (std::size_t k = 0; k < m; ++k) {
        c[k] = std::cos(l[k] * grid[j]);
        s[k] = std::sin(l[k] * grid[j]);
      }
    } else {
      for (std::size_t k = 0; k < m; ++k) {
        const double cn = c[k] * rc[k] - s[k] * rs[k];
        s[k] = s[k] * rc[k] + c[k] * rs[k];
        c[k] = cn;
      }
    }
    double v0 = 0.0, v1 = 0.0, d0 = 0.0, d1 = 0.0;
    std::size_t k = 0;
    for (; k + 1 < m; k += 2) {
      v0 += a[k] * c[k] + b[k] * s[k];
      v1 += a[k + 1] * c[k + 1] + b[k + 1] * s[k + 1];
      d0 += l[k] * (b[k] * c[k] - a[k] * s[k]);
      d1 += l[k + 1] * (b[k + 1] * c[k + 1] - a[k + 1] * s[k + 1]);
    }
    if (k < m) {
      v0 += a[k] * c[k] + b[k] * s[k];
      d0 += l[k] * (b[k] * c[k] - a[k] * s[k]);
    }
    values[j] = (v0 + v1) * norm_;
    slopes[j] = (d0 + d1) * norm_;
  }
}

ZeroReport count_zeros_W(const SpectralPath& path, Interval interval, const ScanOptions& opts) {
  if (path.freqs.empty()) throw InvalidArgument("empty spectral path");
  return scan_zeros(SpectralTarget(path), interval, opts);
}

GridSampler::GridSampler(std::vector<double> grid) : grid_(std::move(grid)) {
  if (grid_.empty()) throw InvalidArgument("grid must be non-empty");
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    if (!(grid_[i] - grid_[i - 1] >= 1e-6)) {
      throw InvalidArgument("grid must be sorted with gaps of at least 1e-6");
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = kernel_sc(grid_[i] - grid_[j], 0);
    }
  }
  double last_pivot = 0.0;
  for (double jitter : {0.0, 1e-14, 1e-13, 1e-12, 1e-11, 1e-10}) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(kj);
    if (llt.info() != Eigen::Success) continue;
    Eigen::MatrixXd lower = llt.matrixL();
    last_pivot = lower.diagonal().minCoeff();
    if (!(last_pivot > 0.0) || !lower.allFinite()) continue;
    chol_ = std::make_shared<const Eigen::MatrixXd>(std::move(lower));
    jitter_ = jitter;
    return;
  }
  std::ostringstream msg;
  msg << "sinc covariance on " << n << " grid points is singular even with jitter 1e-10";
  throw NearSingular(msg.str(), last_pivot, -1);
}

GridPath GridSampler::sample(RngStream& stream) const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_.size());
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = stream.gaussian();
  const Eigen::VectorXd v = chol_->triangularView<Eigen::Lower>() * z;
  GridPath out;
  out.grid = grid_;
  out.values.assign(v.data(), v.data() + n);
  out.chol = chol_;
  out.jitter = jitter_;
  return out;
}

Eigen::MatrixXd GridSampler::sample_block(std::uint64_t seed, std::uint64_t first_stream,
                                          int count) const {
  const Eigen::Index n = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXd z(n, count);
  for (int r = 0; r < count; ++r) {
    RngStream stream(seed, first_stream + static_cast<std::uint64_t>(r));
    for (Eigen::Index i = 0; i < n; ++i) z(i, r) = stream.gaussian();
  }
  return chol_->triangularView<Eigen::Lower>() * z;
}

GridPath sample_grid(std::vector<double> grid, RngStream& stream) {
  return GridSampler(std::move(grid)).sample(stream);
}

int count_sign_changes(std::span<const double> values) {
  int changes = 0;
  for (std::size_t j = 1; j < values.size(); ++j) {
    if ((values[j - 1] >= 0.0) != (values[j] >= 0.0)) ++changes;
  }
  return changes;
}

}  // namespace trigzeros
