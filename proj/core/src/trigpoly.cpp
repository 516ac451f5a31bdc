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

#include "trigzeros/trigpoly.hpp"

#include <cmath>
#include <numbers>

#include "trigzeros/errors.hpp"

namespace trigzeros {

TrigPoly::TrigPoly(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty() || a_.size() != b_.size()) {
    throw InvalidArgument("TrigPoly needs equal-length, non-empty a and b");
  }
}

TrigPoly TrigPoly::from_packed(std::span<const double> ab) {
  if (ab.empty() || ab.size() % 2 != 0) {
    throw InvalidArgument("packed coefficients must have even, non-zero length");
  }
  const std::size_t n = ab.size() / 2;
  return TrigPoly(std::vector<double>(ab.begin(), ab.begin() + n),
                  std::vector<double>(ab.begin() + n, ab.end()));
}

double TrigPoly::period() const noexcept { return 2.0 * std::numbers::pi * degree(); }

bool TrigPoly::is_zero() const noexcept {
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] != 0.0 || b_[i] != 0.0) return false;
  }
  return true;
}

double TrigPoly::abs_bound() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) s += std::abs(a_[i]) + std::abs(b_[i]);
  return s / std::sqrt(static_cast<double>(degree()));
}

std::vector<std::complex<double>> TrigPoly::horner_coeffs(int k) const {
  const int n_deg = degree();
  // (i n / N)^k = (n/N)^k * i^k
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> ik = kIPow[((k % 4) + 4) % 4];
  std::vector<std::complex<double>> c(n_deg);
  for (int n = 1; n <= n_deg; ++n) {
    const double w = k == 0 ? 1.0 : std::pow(static_cast<double>(n) / n_deg, k);
    c[n - 1] = std::complex<double>(a_[n - 1], -b_[n - 1]) * ik * w;
  }
  return c;
}

double eval(const TrigPoly& p, double t) { return eval_derivative(p, t, 0); }

double eval_derivative(const TrigPoly& p, double t, int k) {
  if (k < 0) throw InvalidArgument("derivative order must be non-negative");
  const int n_deg = p.degree();
  const auto a = p.a();
  const auto b = p.b();
  double sum = 0.0;
  for (int n = 1; n <= n_deg; ++n) {
    const double arg = static_cast<double>(n) * t / n_deg;
    const double c = std::cos(arg), s = std::sin(arg);
    // cos(x + k pi/2), sin(x + k pi/2) without rounding pi/2
    double cs, sn;
    switch (k % 4) {
      case 0: cs = c; sn = s; break;
      case 1: cs = -s; sn = c; break;
      case 2: cs = -c; sn = -s; break;
      default: cs = s; sn = -c; break;
    }
    const double w = k == 0 ? 1.0 : std::pow(static_cast<double>(n) / n_deg, k);
    sum += w * (a[n - 1] * cs + b[n - 1] * sn);
  }
  return sum / std::sqrt(static_cast<double>(n_deg));
}

std::vector<double> eval_batch(const TrigPoly& p, std::span<const double> grid, int k) {
  if (grid.empty()) throw InvalidArgument("eval_batch needs a non-empty grid");
  if (k < 0) throw InvalidArgument("derivative order must be non-negative");
  const auto c = p.horner_coeffs(k);
  const int n_deg = p.degree();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_deg));
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double zr = std::cos(grid[j] / n_deg), zi = std::sin(grid[j] / n_deg);
    double ar = c[n_deg - 1].real(), ai = c[n_deg - 1].imag();
    for (int n = n_deg - 2; n >= 0; --n) {
      const double tr = ar * zr - ai * zi + c[n].real();
      ai = ar * zi + ai * zr + c[n].imag();
      ar = tr;
    }
    out[j] = (ar * zr - ai * zi) * norm;
  }
  return out;
}

void eval_value_slope(const TrigPoly& p, std::span<const double> grid,
                      std::span<double> values, std::span<double> slopes) {
  if (values.size() != grid.size() || slopes.size() != grid.size()) {
    throw InvalidArgument("eval_value_slope output spans must match the grid");
  }
  const auto c0 = p.horner_coeffs(0);
  const auto c1 = p.horner_coeffs(1);
  const int n_deg = p.degree();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n_deg));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double zr = std::cos(grid[j] / n_deg), zi = std::sin(grid[j] / n_deg);
    double vr = c0[n_deg - 1].real(), vi = c0[n_deg - 1].imag();
    double dr = c1[n_deg - 1].real(), di = c1[n_deg - 1].imag();
    for (int n = n_deg - 2; n >= 0; --n) {
      const double tv = vr * zr - vi * zi + c0[n].real();
      vi = vr * zi + vi * zr + c0[n].imag();
      vr = tv;
      const double td = dr * zr - di * zi + c1[n].real();
      di = dr * zi + di * zr + c1[n].imag();
      dr = td;
    }
    values[j] = (vr * zr - vi * zi) * norm;
    slopes[j] = (dr * zr - di * zi) * norm;
  }
}

}  // namespace trigzeros
