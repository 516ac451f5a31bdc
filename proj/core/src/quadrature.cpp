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

#include "trigzeros/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "trigzeros/errors.hpp"

namespace trigzeros {

namespace {

// Kronrod 15-point abscissae (non-negative half); odd indices are the Gauss
// 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  std::array<double, 15> x{};   // on [-1, 1]
  std::array<double, 15> wk{};  // Kronrod weights
  std::array<double, 15> wg{};  // Gauss weights (0 off the Gauss nodes)
};

constexpr Rule15 make_rule15() {
  Rule15 r;
  for (int i = 0; i < 7; ++i) {
    r.x[i] = -kXgk[i];
    r.x[14 - i] = kXgk[i];
    r.wk[i] = r.wk[14 - i] = kWgk[i];
    if (i % 2 == 1) r.wg[i] = r.wg[14 - i] = kWg[i / 2];
  }
  r.x[7] = 0.0;
  r.wk[7] = kWgk[7];
  r.wg[7] = kWg[3];
  return r;
}

constexpr Rule15 kRule = make_rule15();

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + h * kRule.x[i]);
    k += kRule.wk[i] * v;
    g += kRule.wg[i] * v;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

struct Cell {
  Rect r;
  double value, error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

Cell gk15x15(const std::function<double(double, double)>& f, const Rect& r) {
  const double cx = 0.5 * (r.x0 + r.x1), hx = 0.5 * (r.x1 - r.x0);
  const double cy = 0.5 * (r.y0 + r.y1), hy = 0.5 * (r.y1 - r.y0);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double x = cx + hx * kRule.x[i];
    for (int j = 0; j < 15; ++j) {
      const double v = f(x, cy + hy * kRule.x[j]);
      k += kRule.wk[i] * kRule.wk[j] * v;
      g += kRule.wg[i] * kRule.wg[j] * v;
    }
  }
  return {r, k * hx * hy, std::abs((k - g) * hx * hy)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_subdivisions) {
  QuadResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Segment> heap;
  heap.push(gk15(f, a, b));
  double value = heap.top().value, error = heap.top().error;
  int evals = 15;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= max_subdivisions) {
      res.value = value;
      res.error = error;
      res.evaluations = evals;
      res.converged = false;
      return res;
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk15(f, worst.a, mid), right = gk15(f, mid, worst.b);
    evals += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  res.value = value;
  res.error = error;
  res.evaluations = evals;
  res.converged = true;
  return res;
}

QuadResult integrate_adaptive_2d(const std::function<double(double, double)>& f,
                                 const Rect& rect, double abs_tol, double rel_tol,
                                 int max_cells) {
  QuadResult res;
  if (rect.x0 == rect.x1 || rect.y0 == rect.y1) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Cell> heap;
  heap.push(gk15x15(f, rect));
  double value = heap.top().value, error = heap.top().error;
  int evals = 225;
  bool converged = true;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= max_cells) {
      converged = false;
      break;
    }
    const Cell worst = heap.top();
    heap.pop();
    Rect lo = worst.r, hi = worst.r;
    if (worst.r.x1 - worst.r.x0 >= worst.r.y1 - worst.r.y0) {
      lo.x1 = hi.x0 = 0.5 * (worst.r.x0 + worst.r.x1);
    } else {
      lo.y1 = hi.y0 = 0.5 * (worst.r.y0 + worst.r.y1);
    }
    const Cell c1 = gk15x15(f, lo), c2 = gk15x15(f, hi);
    evals += 450;
    value += c1.value + c2.value - worst.value;
    error += c1.error + c2.error - worst.error;
    heap.push(c1);
    heap.push(c2);
  }
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  res.value = value;
  res.error = error;
  res.evaluations = evals;
  res.converged = converged;
  return res;
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace trigzeros
