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

#include <complex>
#include <span>
#include <vector>

namespace trigzeros {

// X_N(t) = N^{-1/2} * sum_{n=1}^N [a_n cos(n t / N) + b_n sin(n t / N)].
// Period in t is 2*pi*N; every derivative is again a trigonometric
// polynomial of the same degree.
class TrigPoly {
 public:
  TrigPoly(std::vector<double> a, std::vector<double> b);
  // Packed layout (a_1..a_N, b_1..b_N) as produced by sample_coeffs.
  static TrigPoly from_packed(std::span<const double> ab);

  int degree() const noexcept { return static_cast<int>(a_.size()); }
  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }
  double period() const noexcept;
  bool is_zero() const noexcept;
  // sum |a_n| + |b_n| scaled by N^{-1/2}; a bound on sup_t |X_N(t)|.
  double abs_bound() const noexcept;

  // Complex coefficients c_n with X_N^{(k)}(t) = Re sum_n c_n z^n / sqrt(N),
  // z = exp(i t / N). Index 0 holds c_1.
  std::vector<std::complex<double>> horner_coeffs(int k) const;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

// Direct summation, one cosine/sine pair per term.
double eval(const TrigPoly& p, double t);
// k-th derivative by phase shift: (n/N)^k * cos(n t / N + k pi / 2) per cosine
// term, analogously for sine.
double eval_derivative(const TrigPoly& p, double t, int k);

// k-th derivative on a set of points via complex Horner recurrence in
// z = exp(i t / N); O(N) multiply-adds per point and a single sincos.
std::vector<double> eval_batch(const TrigPoly& p, std::span<const double> grid, int k);

// Value and first derivative together, the shape the zero scanner needs.
void eval_value_slope(const TrigPoly& p, std::span<const double> grid,
                      std::span<double> values, std::span<double> slopes);

}  // namespace trigzeros
