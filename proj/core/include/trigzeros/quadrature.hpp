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

#include <functional>
#include <vector>

namespace trigzeros {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  int evaluations = 0;
  bool converged = false;  // false when the subdivision budget ran out
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Stops once the summed
// error estimate is below max(abs_tol, rel_tol * |value|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_subdivisions = 4000);

struct Rect {
  double x0, x1, y0, y1;
};

// Adaptive tensor-product Gauss-Kronrod (15x15, embedded 7x7 for the error)
// on a rectangle. Cells with the largest error are bisected along their
// longer side until the budget or the tolerance is met.
QuadResult integrate_adaptive_2d(const std::function<double(double, double)>& f,
                                 const Rect& rect, double abs_tol, double rel_tol,
                                 int max_cells = 20000);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

}  // namespace trigzeros
