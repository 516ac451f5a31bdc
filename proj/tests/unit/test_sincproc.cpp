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

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "doctest.h"
#include "test_support.hpp"
#include "trigzeros/errors.hpp"
#include "trigzeros/kernels.hpp"
#include "trigzeros/sincproc.hpp"

using namespace trigzeros;
using trigzeros::testing::Moments;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("spectral path covariance") {
  constexpr int kPaths = 100000;
  const double lags[] = {0.0, 0.5, 1.0, 2.0, kPi, 5.0};
  Moments prod[6];
  Moments dvar;
  for (int r = 0; r < kPaths; ++r) {
    RngStream s = make_stream(101, r);
    const SpectralPath w = sample_spectral(kDefaultSpectralFrequencies, s);
    const double w0 = w.value(0.0);
    for (int i = 0; i < 6; ++i) prod[i].add(w0 * w.value(lags[i]));
    const double d = w.derivative(0.0, 1);
    dvar.add(d * d);
  }
  for (int i = 0; i < 6; ++i) {
    CAPTURE(lags[i]);
    CHECK(std::abs(prod[i].mean() - kernel_sc(lags[i], 0)) < 4 * prod[i].se());
  }
  CHECK(std::abs(dvar.mean() - 1.0 / 3.0) < 4 * dvar.se());
}

TEST_CASE("spectral path evaluation and derivatives") {
  RngStream s = make_stream(102, 0);
  const SpectralPath w = sample_spectral(64, s);
  REQUIRE(w.size() == 64);
  for (double f : w.freqs) CHECK((f >= 0.0 && f <= 1.0));
  const double h = 1e-4;
  for (double t : {-2.0, 0.3, 11.0}) {
    const double fd = (w.value(t + h) - w.value(t - h)) / (2 * h);
    CHECK(std::abs(w.derivative(t, 1) - fd) < 1e-7);
  }
  const SpectralTarget target(w);
  std::vector<double> grid(300), vals(300), slopes(300);
  for (int i = 0; i < 300; ++i) grid[i] = -5.0 + 0.05 * i;
  target.sample(grid, vals, slopes);
  for (int i = 0; i < 300; ++i) {
    CHECK(vals[i] == doctest::Approx(w.value(grid[i])).epsilon(1e-12).scale(1.0));
    CHECK(slopes[i] == doctest::Approx(w.derivative(grid[i], 1)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("count_zeros_W reduces to cosine zeros") {
  SpectralPath w;
  w.freqs = {1.0, 0.5};
  w.coeff_a = {1.0, 0.0};
  w.coeff_b = {0.0, 0.0};
  const ZeroReport z = count_zeros_W(w, {0.0, 2 * kPi});
  REQUIRE(z.count == 2);
  CHECK(z.roots[0] == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(z.roots[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
}

TEST_CASE("mean zero count of W on an interval of length pi sqrt 3 is 1") {
  Moments m;
  for (int r = 0; r < 20000; ++r) {
    RngStream s = make_stream(103, r);
    m.add(count_zeros_W(sample_spectral(kDefaultSpectralFrequencies, s), {0.0, kPi * std::numbers::sqrt3}).count);
  }
  CHECK(std::abs(m.mean() - 1.0) < 4 * m.se());
}

TEST_CASE("spectral fidelity M=128 vs M=1024") {
  Moments lo, hi;
  for (int r = 0; r < 6000; ++r) {
    RngStream s1 = make_stream(104, r), s2 = make_stream(105, r);
    lo.add(count_zeros_W(sample_spectral(128, s1), {0.0, 10.0}).count);
    hi.add(count_zeros_W(sample_spectral(1024, s2), {0.0, 10.0}).count);
  }
  CHECK(std::abs(lo.mean() - hi.mean()) < 4 * std::hypot(lo.se(), hi.se()));
}

TEST_CASE("grid sampler marginals") {
  GridSampler single({0.0});
  Moments m, m3, m4;
  for (int r = 0; r < 100000; ++r) {
    RngStream s = make_stream(106, r);
    const double x = single.sample(s).values[0];
    m.add(x);
    m3.add(x * x * x);
    m4.add(x * x * x * x);
  }
  const double var = m.var();
  CHECK(std::abs(m3.mean() / std::pow(var, 1.5)) < 0.03);
  CHECK(std::abs(m4.mean() / (var * var) - 3.0) < 0.06);

  GridSampler pi_pair({0.0, kPi});
  trigzeros::testing::CovAccum c;
  for (int r = 0; r < 20000; ++r) {
    RngStream s = make_stream(107, r);
    const auto v = pi_pair.sample(s).values;
    c.add(v[0], v[1]);
  }
  CHECK(std::abs(c.corr()) < 4.0 / std::sqrt(20000.0));

  GridSampler far({0.0, 1e5});
  const Eigen::MatrixXd cov = far.lower() * far.lower().transpose();
  CHECK(std::abs(cov(0, 1)) < 2e-5);

  CHECK_THROWS_AS(GridSampler({1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(GridSampler({0.0, 1e-7}), InvalidArgument);
}

TEST_CASE("grid sampler reproduces the sinc covariance and block draws") {
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(0.25 * i);
  const GridSampler g(grid);
  CHECK(g.jitter() <= 1e-10);
  const Eigen::MatrixXd cov = g.lower() * g.lower().transpose();
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      worst = std::max(worst, std::abs(cov(i, j) - kernel_sc(grid[i] - grid[j], 0)));
    }
  }
  CHECK(worst <= 1e-10 + 1e-14);
  const Eigen::MatrixXd block = g.sample_block(9, 100, 5);
  for (int r = 0; r < 5; ++r) {
    RngStream s = make_stream(9, 100 + r);
    const GridPath p = g.sample(s);
    for (int i = 0; i <= 40; ++i) CHECK(block(i, r) == doctest::Approx(p.values[i]).epsilon(1e-13));
  }
}

TEST_CASE("count_sign_changes") {
  const std::vector<double> v = {1.0, -1.0, -2.0, 0.0, 3.0, -0.5};
  CHECK(count_sign_changes(v) == 3);
  CHECK(count_sign_changes(std::vector<double>{}) == 0);
}

TEST_CASE("grid and spectral zero-count laws agree on [0,10]") {
  constexpr int kPaths = 20000;
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(0.01 * i);
  const GridSampler g(grid);
  std::map<int, double> pg, ps;
  constexpr int kBlock = 500;
  for (int start = 0; start < kPaths; start += kBlock) {
    const Eigen::MatrixXd block = g.sample_block(108, start, kBlock);
    for (int r = 0; r < kBlock; ++r) {
      const Eigen::VectorXd col = block.col(r);
      pg[count_sign_changes(std::span<const double>(col.data(), col.size()))] += 1.0 / kPaths;
    }
  }
  for (int r = 0; r < kPaths; ++r) {
    RngStream s = make_stream(109, r);
    ps[count_zeros_W(sample_spectral(kDefaultSpectralFrequencies, s), {0.0, 10.0}).count] +=
        1.0 / kPaths;
  }
  double tv = 0.0;
  for (int k = 0; k < 40; ++k) tv += std::abs(pg[k] - ps[k]);
  tv /= 2;
  MESSAGE("total variation grid vs spectral: " << tv << ", jitter " << g.jitter());
  CHECK(tv < 0.03);
}
