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

#include "trigzeros/aberth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "trigzeros/errors.hpp"

namespace trigzeros {

namespace {

using cplx = std::complex<double>;

struct Eval {
  cplx newton;      // p(z) / p'(z)
  double backward;  // |p(z)| / sum |c_k| |z|^k
};

// Newton ratio and backward error at z. For |z| > 1 the reversed polynomial
// is evaluated at 1/z so powers of z never overflow.
Eval evaluate(std::span<const cplx> c, cplx z) {
  const int d = static_cast<int>(c.size()) - 1;
  const double r = std::abs(z);
  if (r <= 1.0) {
    cplx p = c[d], dp = 0.0;
    double pabs = std::abs(c[d]);
    for (int k = d - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[k];
      pabs = pabs * r + std::abs(c[k]);
    }
    return {p / dp, std::abs(p) / pabs};
  }
  // p(z) = z^d q(w), w = 1/z, q(w) = sum c_k w^{d-k}
  const cplx w = 1.0 / z;
  const double rw = 1.0 / r;
  cplx q = c[0], dq = 0.0;
  double qabs = std::abs(c[0]);
  for (int k = 1; k <= d; ++k) {
    dq = dq * w + q;
    q = q * w + c[k];
    qabs = qabs * rw + std::abs(c[k]);
  }
  // p'(z)/p(z) = d/z - w^2 q'(w)/q(w)
  const cplx logderiv = static_cast<double>(d) * w - w * w * dq / q;
  return {1.0 / logderiv, std::abs(q) / qabs};
}

}  // namespace

AberthResult aberth_roots(std::span<const cplx> coeffs, const AberthOptions& opts) {
  if (coeffs.size() < 2) throw InvalidArgument("aberth_roots needs degree >= 1");
  if (coeffs.back() == cplx(0.0)) throw InvalidArgument("leading coefficient is zero");
  const int d = static_cast<int>(coeffs.size()) - 1;

  AberthResult out;
  if (d == 1) {
    out.roots = {-coeffs[0] / coeffs[1]};
    return out;
  }

  // Initial guesses on the circle of radius (|c0|/|cd|)^{1/d}, rotated off
  // the real axis.
  double radius = std::pow(std::abs(coeffs[0]) / std::abs(coeffs[d]), 1.0 / d);
  if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;
  std::vector<cplx> z(d);
  for (int k = 0; k < d; ++k) {
    z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / d + 0.4);
  }

  const double tol = std::max(opts.residual_tol,
                              4.0 * d * std::numeric_limits<double>::epsilon());
  std::vector<char> done(d, 0);
  std::vector<double> backward(d, std::numeric_limits<double>::infinity());
  int remaining = d;
  int sweep = 0;
  for (; sweep < opts.max_sweeps && remaining > 0; ++sweep) {
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      const Eval e = evaluate(coeffs, z[i]);
      backward[i] = e.backward;
      double sr = 0.0, si = 0.0;  // sum_{j != i} 1 / (z_i - z_j)
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        const double dr = z[i].real() - z[j].real(), di = z[i].imag() - z[j].imag();
        const double inv = 1.0 / (dr * dr + di * di);
        sr += dr * inv;
        si -= di * inv;
      }
      const cplx step = e.newton / (1.0 - e.newton * cplx(sr, si));
      if (std::isfinite(step.real()) && std::isfinite(step.imag())) z[i] -= step;
      const bool tiny_step = std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                                   std::max(1.0, std::abs(z[i]));
      if (e.backward <= tol || tiny_step) {
        done[i] = 1;
        --remaining;
      }
    }
  }
  out.sweeps = sweep;
  for (int i = 0; i < d; ++i) {
    out.max_residual = std::max(out.max_residual, evaluate(coeffs, z[i]).backward);
  }
  if (remaining > 0) {
    std::ostringstream msg;
    msg << "Aberth iteration did not converge after " << sweep << " sweeps ("
        << remaining << " of " << d << " roots open, worst backward error "
        << out.max_residual << ")";
    throw NumericalFailure(msg.str(), out.max_residual);
  }
  out.roots = std::move(z);
  return out;
}

}  // namespace trigzeros
