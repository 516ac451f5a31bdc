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
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "test_support.hpp"
#include "trigzeros/errors.hpp"
#include "trigzeros/kernels.hpp"
#include "trigzeros/quadrature.hpp"
#include "trigzeros/rice.hpp"
#include "trigzeros/sincproc.hpp"
#include "trigzeros/zerocount.hpp"

using namespace trigzeros;
using trigzeros::testing::Moments;

namespace {

constexpr double kPi = std::numbers::pi;

// E|(l1 . z)(l2 . z)| for z ~ N(0, I_2). In polar coordinates the radial
// factor integrates to 2, leaving (1/pi) int_0^{2 pi} |l1.u||l2.u| dtheta.
// The angular integrand is smooth between its four kinks, so Gauss-Legendre
// on each piece converges to machine precision.
double abs_product_polar(double a1, double a2, double b1, double b2) {
  std::vector<double> cuts = {0.0, 2 * kPi};
  for (auto [p, q] : {std::pair{a1, a2}, std::pair{b1, b2}}) {
    // p cos + q sin = 0 at theta = atan2(-p, q) and that + pi.
    double th = std::fmod(std::atan2(-p, q) + 2 * kPi, kPi);
    for (const double c : {th, th + kPi}) {
      if (c > 0.0 && c < 2 * kPi) cuts.push_back(c);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = cuts[i - 1], hi = cuts[i];
    if (hi - lo < 1e-15) continue;
    total += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double th) {
          const double c = std::cos(th), s = std::sin(th);
          return std::abs(a1 * c + a2 * s) * std::abs(b1 * c + b2 * s);
        },
        lo, hi);
  }
  return total / kPi;
}

// Schur complement and density by dense solves on the explicit 4x4 matrix.
struct DenseConditional {
  Eigen::Matrix2d cond;
  double density;
};
DenseConditional dense_conditional(double t1, double t2) {
  const double t[2] = {t1, t2};
  Eigen::Matrix4d s;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double d = t[i] - t[j];
      s(i, j) = kernel_sc(d, 0);
      s(i, 2 + j) = kernel_sc(-d, 1);
      s(2 + i, j) = kernel_sc(d, 1);
      s(2 + i, 2 + j) = -kernel_sc(d, 2);
    }
  }
  const Eigen::Matrix2d s11 = s.topLeftCorner<2, 2>();
  const Eigen::Matrix2d s12 = s.topRightCorner<2, 2>();
  const Eigen::Matrix2d s21 = s.bottomLeftCorner<2, 2>();
  const Eigen::Matrix2d s22 = s.bottomRightCorner<2, 2>();
  DenseConditional out;
  out.cond = s22 - s21 * s11.fullPivLu().solve(s12);
  out.density = 1.0 / (2 * kPi * std::sqrt(s11.determinant()));
  return out;
}

double intensity_oracle(double t1, double t2) {
  const DenseConditional dc = dense_conditional(t1, t2);
  const Eigen::Matrix2d l = dc.cond.llt().matrixL();
  return dc.density * abs_product_polar(l(0, 0), 0.0, l(1, 0), l(1, 1));
}

}  // namespace

TEST_CASE("mean_zeros") {
  CHECK(mean_zeros({0.0, 50.0}) == doctest::Approx(50.0 / (kPi * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(mean_zeros({0.0, 50.0}) == doctest::Approx(9.188814).epsilon(1e-6));
  CHECK(mean_zeros({3.0, 3.0}) == 0.0);
  CHECK(mean_zeros({0.0, kPi * std::numbers::sqrt3}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(mean_zeros({1.0, 0.0}), InvalidArgument);
}

TEST_CASE("conditional_at_zeros") {
  const double one[1] = {0.0};
  const ConditionalGaussian c1 = conditional_at_zeros(one);
  CHECK(c1.cond_cov(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(c1.marginal_density_at_zero == doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-15));

  const double far[2] = {0.0, 1e4};
  const ConditionalGaussian c2 = conditional_at_zeros(far);
  CHECK(std::abs(c2.cond_cov(0, 0) - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(c2.cond_cov(1, 1) - 1.0 / 3.0) < 1e-3);
  CHECK(std::abs(c2.cond_cov(0, 1)) < 1e-3);

  const double t01[2] = {0.0, 1.0};
  const ConditionalGaussian c3 = conditional_at_zeros(t01);
  const DenseConditional dc = dense_conditional(0.0, 1.0);
  CHECK((c3.cond_cov - dc.cond).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(c3.marginal_density_at_zero == doctest::Approx(dc.density).epsilon(1e-12));

  const double close[2] = {0.0, 5e-7};
  CHECK_THROWS_AS(conditional_at_zeros(close), InvalidArgument);
}

TEST_CASE("conditioning on zeros shrinks the derivative covariance") {
  // cond_cov <= Sigma22 in the Loewner order, so every conditional derivative
  // variance is at most 1/3. Eigenvalues themselves may exceed 1/3 because
  // Sigma22 has eigenvalues 1/3 +- |sc''(gap)|.
  for (double gap : {0.05, 0.1, 0.3, 1.0, 2.5, 4.0, 10.0, 77.0}) {
    const double t[2] = {1.0, 1.0 + gap};
    const ConditionalGaussian c = conditional_at_zeros(t);
    const Eigen::MatrixXd s22 = build_cov(t).sigma.bottomRightCorner(2, 2);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.cond_cov);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> shrink(s22 - c.cond_cov);
    CAPTURE(gap);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(c.cond_cov(0, 0) <= 1.0 / 3.0 + 1e-9);
    CHECK(c.cond_cov(1, 1) <= 1.0 / 3.0 + 1e-9);
    CHECK(shrink.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("expected_abs_product closed form against the polar oracle") {
  for (double rho : {-0.99, -0.6, -0.1, 0.0, 0.3, 0.75, 0.999}) {
    for (auto [s1, s2] : {std::pair{1.0, 1.0}, std::pair{0.3, 2.0}}) {
      const double a = s1, b1 = s2 * rho, b2 = s2 * std::sqrt(1 - rho * rho);
      CAPTURE(rho);
      CHECK(std::abs(expected_abs_product(s1, s2, rho) - abs_product_polar(a, 0.0, b1, b2)) <
            1e-12);
    }
  }
  // Product of independent half-normal means.
  CHECK(expected_abs_product(1.0, 1.0, 0.0) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
}

TEST_CASE("a 64x64 Gauss-Hermite rule only resolves E|Y1 Y2| coarsely") {
  // The kinks of |y1 y2| limit tensor Hermite rules to algebraic accuracy;
  // this is why the polar oracle carries the tight comparisons.
  std::vector<double> x(64), w(64);
  {
    // Golub-Welsch for the probabilists' Hermite weight.
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(64, 64);
    for (int i = 1; i < 64; ++i) j(i, i - 1) = j(i - 1, i) = std::sqrt(static_cast<double>(i));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    for (int i = 0; i < 64; ++i) {
      x[i] = es.eigenvalues()(i);
      w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
  }
  const DenseConditional dc = dense_conditional(0.0, 1.0);
  const Eigen::Matrix2d l = dc.cond.llt().matrixL();
  double gh = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int k = 0; k < 64; ++k) {
      const double y1 = l(0, 0) * x[i], y2 = l(1, 0) * x[i] + l(1, 1) * x[k];
      gh += w[i] * w[k] * std::abs(y1 * y2);
    }
  }
  const double exact = abs_product_polar(l(0, 0), 0.0, l(1, 0), l(1, 1));
  CHECK(std::abs(gh - exact) < 5e-3 * exact);
}

TEST_CASE("two_point_intensity") {
  CHECK(two_point_intensity(0.3, 2.9) == two_point_intensity(2.9, 0.3));
  CHECK(std::abs(two_point_intensity(0.0, 1e3) - 1.0 / (3 * kPi * kPi)) < 1e-4);
  CHECK(two_point_intensity(0.0, 1.0) == doctest::Approx(intensity_oracle(0.0, 1.0)).epsilon(1e-10));
  for (double gap : {0.05, 0.2, 0.7, 3.3, 12.0, 40.0}) {
    const double v = two_point_intensity(5.0, 5.0 + gap);
    CAPTURE(gap);
    CHECK(v > 0.0);
    CHECK(v == doctest::Approx(intensity_oracle(5.0, 5.0 + gap)).epsilon(1e-8));
  }
  CHECK_THROWS_AS(two_point_intensity(1.0, 1.0 + 1e-7), NearSingular);
}

TEST_CASE("second_factorial_moment") {
  const SecondMomentResult r = second_factorial_moment({0.0, 10.0}, 0.05);
  CHECK(r.converged);
  CHECK(r.excluded_area == doctest::Approx(100.0 - 9.95 * 9.95).epsilon(1e-14));
  CHECK_FALSE(r.note.empty());

  // 1D reduction by stationarity: 2 int_eps^L (L - u) rho2(0, u) du.
  const QuadResult ref = integrate_adaptive(
      [](double u) { return 2.0 * (10.0 - u) * two_point_intensity(0.0, u); }, 0.05, 10.0, 0.0,
      1e-11);
  CHECK(r.value == doctest::Approx(ref.value).epsilon(2e-6));

  double prev = 0.0, prev_diff = 1e9;
  for (double eps : {0.2, 0.1, 0.05}) {
    const double v = second_factorial_moment({0.0, 10.0}, eps).value;
    CHECK(v > prev);
    if (prev > 0.0) {
      CHECK(v - prev < prev_diff);
      prev_diff = v - prev;
    }
    prev = v;
  }

  double last = 1e9;
  for (double len : {4.0, 1.0, 0.3}) {
    const double v = second_factorial_moment({0.0, len}, 0.05).value;
    CHECK(v < last);
    last = v;
  }
  CHECK(last < 1e-3);
  CHECK_THROWS_AS(second_factorial_moment({0.0, 1.0}, 0.25), InvalidArgument);
  CHECK_THROWS_AS(second_factorial_moment({0.0, 1.0}, 0.0), InvalidArgument);
}

TEST_CASE("m_factorial_moment_mc with m=2 matches the quadrature") {
  RngStream s = make_stream(201, 0);
  const FactorialMomentMc mc = m_factorial_moment_mc({0.0, 10.0}, 2, 0.05, 40000, 8, s);
  const double quad = second_factorial_moment({0.0, 10.0}, 0.05).value;
  CHECK(std::abs(mc.estimate - quad) < 3 * mc.se);
  CHECK(mc.acceptance_rate > 0.98);

  RngStream s2 = make_stream(201, 0), s3 = make_stream(201, 0);
  CHECK(m_factorial_moment_mc({0.0, 10.0}, 2, 0.05, 200, 8, s2).estimate ==
        m_factorial_moment_mc({0.0, 10.0}, 2, 0.05, 200, 8, s3).estimate);
}

TEST_CASE("m_factorial_moment_mc inner expectation decouples at large gaps") {
  RngStream s = make_stream(202, 0);
  const FactorialMomentMc mc = m_factorial_moment_mc({0.0, 1000.0}, 2, 50.0, 4000, 64, s);
  CHECK(mc.mean_inner == doctest::Approx(2.0 / (3 * kPi)).epsilon(0.01));
}

TEST_CASE("m_factorial_moment_mc errors") {
  RngStream s = make_stream(203, 0);
  CHECK_THROWS_AS(m_factorial_moment_mc({0.0, 10.0}, 1, 0.05, 100, 4, s), InvalidArgument);
  CHECK_THROWS_AS(m_factorial_moment_mc({0.0, 10.0}, 5, 0.05, 100, 4, s), InvalidArgument);
  try {
    (void)m_factorial_moment_mc({0.0, 1.0}, 4, 0.45, 100, 4, s);
    FAIL("expected EpsilonTooLarge");
  } catch (const EpsilonTooLarge& e) {
    CHECK(e.acceptance_rate() < 0.01);
  }
}

TEST_CASE("third factorial moment: gamma-t Monte Carlo vs path simulation") {
  constexpr int kPaths = 20000;
  Moments f2, f3;
  for (int r = 0; r < kPaths; ++r) {
    RngStream s = make_stream(204, r);
    const auto z = static_cast<std::uint64_t>(
        count_zeros_W(sample_spectral(kDefaultSpectralFrequencies, s), {0.0, 10.0}).count);
    f2.add(static_cast<double>(falling_factorial(z, 2)));
    f3.add(static_cast<double>(falling_factorial(z, 3)));
  }
  RngStream s = make_stream(205, 0);
  const FactorialMomentMc mc = m_factorial_moment_mc({0.0, 10.0}, 3, 0.05, 20000, 8, s);
  MESSAGE("E Z^[3]: paths " << f3.mean() << " +- " << f3.se() << ", gamma-t MC " << mc.estimate
                            << " +- " << mc.se << ", singular nodes " << mc.singular_nodes);
  CHECK(std::abs(mc.estimate - f3.mean()) < 3 * std::hypot(mc.se, f3.se()));
  const double quad = second_factorial_moment({0.0, 10.0}, 0.05).value;
  CHECK(std::abs(quad - f2.mean()) < 3 * f2.se());
}
