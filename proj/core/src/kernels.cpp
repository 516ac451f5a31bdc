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

#include "trigzeros/kernels.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "trigzeros/errors.hpp"

namespace trigzeros {

namespace {

constexpr int kSeriesTerms = 14;  // |x| < 1: last term below 1/28!

void check_order(int order) {
  if (order < 0 || order > 2) throw InvalidArgument("kernel order must be 0, 1 or 2");
}

// d^order/dx^order of sum_j (-1)^j mom[j] x^{2j} / (2j)!, where mom[j] is the
// 2j-th moment of the spectral measure.
template <typename Moments>
double even_series(double x, int order, const Moments& mom) {
  double sum = 0.0;
  double fact = 1.0;  // (2j)!
  for (int j = 0; j < kSeriesTerms; ++j) {
    if (j > 0) fact *= (2.0 * j - 1.0) * (2.0 * j);
    const int p = 2 * j - order;
    if (p < 0) continue;
    // x^{2j}/(2j)! differentiated `order` times = x^p * (2j)!/p! / (2j)!
    double falling = 1.0;
    for (int q = 0; q < order; ++q) falling *= (2.0 * j - q);
    const double term = mom[j] * falling * std::pow(x, p) / fact;
    sum += (j % 2 == 0) ? term : -term;
  }
  return sum;
}

// Moments (1/N) sum (n/N)^{2j}, j < kSeriesTerms; cached for the last N seen.
const std::array<double, kSeriesTerms>& rn_moments(int N) {
  thread_local int cached_n = -1;
  thread_local std::array<double, kSeriesTerms> mom{};
  if (cached_n != N) {
    mom.fill(0.0);
    for (int n = 1; n <= N; ++n) {
      const double u = static_cast<double>(n) / N;
      const double u2 = u * u;
      double p = 1.0;
      for (int j = 0; j < kSeriesTerms; ++j) {
        mom[j] += p;
        p *= u2;
      }
    }
    for (double& m : mom) m /= N;
    cached_n = N;
  }
  return mom;
}

}  // namespace

double kernel_rN(double x, int N, int order) {
  check_order(order);
  if (N < 1) throw InvalidArgument("kernel_rN needs N >= 1");
  // r_N is 2 pi N periodic, even; r_N' is odd.
  const double period = 2.0 * std::numbers::pi * N;
  x -= period * std::nearbyint(x / period);
  if (std::abs(x) < 1.0) return even_series(x, order, rn_moments(N));

  // D(theta) = sum_{n=1}^N cos(n theta) = sin(A theta) / (2 sin(theta/2)) - 1/2
  const double theta = x / N;
  const double A = N + 0.5;
  const double u = std::sin(A * theta);
  const double du = A * std::cos(A * theta);
  const double v = 2.0 * std::sin(0.5 * theta);
  const double dv = std::cos(0.5 * theta);
  const double f = u / v;
  if (order == 0) return (f - 0.5) / N;
  const double df = (du * v - u * dv) / (v * v);
  if (order == 1) return df / (static_cast<double>(N) * N);
  // u'' = -A^2 u, v'' = -v/4
  const double d2f = (-A * A * u * v + 0.25 * u * v) / (v * v) - 2.0 * dv * df / v;
  return d2f / (static_cast<double>(N) * N * N);
}

double kernel_sc(double x, int order) {
  check_order(order);
  if (std::abs(x) < 0.5) {
    // sin x / x = sum (-1)^j x^{2j} / (2j+1)!; spectral moments 1/(2j+1).
    std::array<double, kSeriesTerms> mom{};
    for (int j = 0; j < kSeriesTerms; ++j) mom[j] = 1.0 / (2.0 * j + 1.0);
    return even_series(x, order, mom);
  }
  const double s = std::sin(x), c = std::cos(x);
  switch (order) {
    case 0: return s / x;
    case 1: return (x * c - s) / (x * x);
    default: return -s / x - 2.0 * c / (x * x) + 2.0 * s / (x * x * x);
  }
}

namespace {

template <typename Kernel>
Eigen::MatrixXd covariance_layout(std::span<const double> t, Kernel&& k) {
  const Eigen::Index m = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd s(2 * m, 2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = t[i] - t[j];
      s(i, j) = k(d, 0);
      s(i, m + j) = k(-d, 1);
      s(m + i, j) = k(d, 1);
      s(m + i, m + j) = -k(d, 2);
    }
  }
  return s;
}

}  // namespace

Eigen::MatrixXd sigma_matrix(std::span<const double> t) {
  return covariance_layout(t, [](double d, int order) { return kernel_sc(d, order); });
}

Eigen::MatrixXd gamma_matrix(std::span<const double> t, int N) {
  return covariance_layout(t, [N](double d, int order) { return kernel_rN(d, N, order); });
}

CholeskyFactor cholesky_tracked(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  CholeskyFactor out;
  out.lower = Eigen::MatrixXd::Zero(n, n);
  out.min_pivot = std::numeric_limits<double>::infinity();
  out.ok = true;
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= out.lower(j, k) * out.lower(j, k);
    const double pivot = d > 0.0 ? std::sqrt(d) : 0.0;
    if (pivot < out.min_pivot) {
      out.min_pivot = pivot;
      out.min_index = static_cast<int>(j);
    }
    if (!(d > 0.0)) {
      out.ok = false;
      return out;
    }
    out.lower(j, j) = pivot;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= out.lower(i, k) * out.lower(j, k);
      out.lower(i, j) = s / pivot;
    }
  }
  return out;
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

// sc and its derivatives in quad precision: series below 0.5, closed form
// above. Used only to certify and factor ill-conditioned sigma matrices.
Quad sc_quad(const Quad& x, int order) {
  using std::abs;
  if (abs(x) < 0.5) {
    constexpr int kTerms = 18;
    Quad sum = 0, fact = 1;
    for (int j = 0; j < kTerms; ++j) {
      if (j > 0) fact *= Quad((2 * j) * (2 * j + 1));  // (2j+1)!
      const int p = 2 * j - order;
      if (p < 0) continue;
      Quad falling = 1;
      for (int q = 0; q < order; ++q) falling *= (2 * j - q);
      Quad term = falling * pow(x, p) / fact;
      sum += (j % 2 == 0) ? term : Quad(-term);
    }
    return sum;
  }
  const Quad sn = sin(x), cs = cos(x);
  switch (order) {
    case 0: return sn / x;
    case 1: return (x * cs - sn) / (x * x);
    default: return -sn / x - 2 * cs / (x * x) + 2 * sn / (x * x * x);
  }
}

struct QuadFactor {
  std::vector<Quad> lower;  // row-major n x n
  double min_pivot = std::numeric_limits<double>::infinity();
  int min_index = -1;
  bool ok = true;
};

QuadFactor cholesky_quad(std::span<const double> t) {
  const std::size_t m = t.size(), n = 2 * m;
  std::vector<Quad> a(n * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Quad d = Quad(t[i]) - Quad(t[j]);
      a[i * n + j] = sc_quad(d, 0);
      a[i * n + m + j] = sc_quad(-d, 1);
      a[(m + i) * n + j] = sc_quad(d, 1);
      a[(m + i) * n + m + j] = -sc_quad(d, 2);
    }
  }
  QuadFactor f;
  f.lower.assign(n * n, Quad(0));
  for (std::size_t j = 0; j < n; ++j) {
    Quad d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= f.lower[j * n + k] * f.lower[j * n + k];
    const double pivot = d > 0 ? static_cast<double>(sqrt(d)) : 0.0;
    if (pivot < f.min_pivot) {
      f.min_pivot = pivot;
      f.min_index = static_cast<int>(j);
    }
    if (!(d > 0)) {
      f.ok = false;
      return f;
    }
    const Quad root = sqrt(d);
    f.lower[j * n + j] = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      Quad s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= f.lower[i * n + k] * f.lower[j * n + k];
      f.lower[i * n + j] = s / root;
    }
  }
  return f;
}

[[noreturn]] void throw_singular(double pivot, int index) {
  std::ostringstream msg;
  msg << "covariance matrix is numerically singular: pivot " << pivot << " at index " << index;
  throw NearSingular(msg.str(), pivot, index);
}

}  // namespace

CovMatrices build_cov(std::span<const double> t, std::optional<int> N) {
  if (t.empty()) throw InvalidArgument("build_cov needs at least one point");
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (std::abs(t[i] - t[j]) < 1e-9) {
        throw InvalidArgument("build_cov needs points pairwise distinct by at least 1e-9");
      }
    }
  }
  CovMatrices out;
  out.t.assign(t.begin(), t.end());
  out.sigma = sigma_matrix(t);
  if (N) out.gammaN = gamma_matrix(t, *N);

  constexpr double kMinPivot = 1e-12;
  // Below this pivot the double factor has lost about half its digits to the
  // rounding of sigma's entries; refactor from quad-precision entries.
  constexpr double kRefactorPivot = 1e-4;
  auto chol = cholesky_tracked(out.sigma);
  if (chol.ok && chol.min_pivot >= kRefactorPivot) {
    out.min_pivot = chol.min_pivot;
    out.sigma_chol = std::move(chol.lower);
    return out;
  }
  const QuadFactor q = cholesky_quad(t);
  out.extended_precision = true;
  out.min_pivot = q.min_pivot;
  if (!q.ok || q.min_pivot < kMinPivot) throw_singular(q.min_pivot, q.min_index);
  const Eigen::Index n = out.sigma.rows();
  out.sigma_chol = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      out.sigma_chol(i, j) = static_cast<double>(q.lower[i * n + j]);
    }
  }
  return out;
}

}  // namespace trigzeros
