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
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trigzeros/quadrature.hpp"
#include "trigzeros/trigpoly.hpp"

namespace trigzeros {

enum class CountMethod { Scan, Companion, Kac };

std::string to_string(CountMethod m);

enum class ZeroFlag : std::uint8_t {
  NearTangency = 1 << 0,
  EndpointZero = 1 << 1,
  Disagreement = 1 << 2,
};

// Zero count of a process on a closed interval. Endpoint zeros are counted
// once and flagged. For Scan and Companion, count == roots.size().
struct ZeroReport {
  int count = 0;
  std::vector<double> roots;  // strictly increasing, inside [lo, hi]
  CountMethod method = CountMethod::Scan;
  std::uint8_t flags = 0;

  bool has(ZeroFlag f) const noexcept { return (flags & static_cast<std::uint8_t>(f)) != 0; }
  void set(ZeroFlag f) noexcept { flags |= static_cast<std::uint8_t>(f); }
};

// "NearTangency|EndpointZero", empty when no flag is set.
std::string flags_to_string(std::uint8_t flags);

// A smooth real process the scanner can sample. bandwidth() bounds the
// angular frequencies present, which fixes the scan step.
class ScanTarget {
 public:
  virtual ~ScanTarget() = default;
  virtual void sample(std::span<const double> grid, std::span<double> values,
                      std::span<double> slopes) const = 0;
  virtual std::pair<double, double> value_slope(double t) const = 0;
  virtual double bandwidth() const = 0;
};

// X_N (or one of its derivatives) as a scan target.
class TrigPolyTarget final : public ScanTarget {
 public:
  explicit TrigPolyTarget(const TrigPoly& p, int derivative = 0);
  void sample(std::span<const double> grid, std::span<double> values,
              std::span<double> slopes) const override;
  std::pair<double, double> value_slope(double t) const override;
  double bandwidth() const override { return 1.0; }

 private:
  int degree_;
  double norm_;
  std::vector<std::complex<double>> c0_;  // value coefficients
  std::vector<std::complex<double>> c1_;  // slope coefficients
};

struct ScanOptions {
  int base_points = 64;        // minimum number of grid cells
  double refine_tol = 1e-12;   // root tolerance, relative to hi - lo
  double tangency_tol = 1e-8;  // extremum depth (relative) that raises NearTangency
};

// Zeros of target(t) - level on [lo, hi] by sign-change scanning.
//
// The grid has max(base_points, ceil(8 (hi - lo) bandwidth / pi)) cells. Each
// sign change is refined by safeguarded Newton/bisection. Cells without a
// sign change whose endpoint slopes show a minimum of |f| are searched for
// that minimum; a crossing there yields two roots, and a shallow one raises
// NearTangency.
ZeroReport scan_zeros(const ScanTarget& target, Interval interval,
                      const ScanOptions& opts = {}, double level = 0.0);

// Scan counter on X_N. Throws DegenerateInput for the zero polynomial.
ZeroReport count_scan(const TrigPoly& p, Interval interval, const ScanOptions& opts = {});

struct CompanionOptions {
  double circle_tol = 1e-8;      // | |z| - 1 | below this counts as a real zero
  double tangency_band = 1e-4;   // roots within this of the circle raise NearTangency
  int max_sweeps = 500;
};

// Exact-count oracle: z = exp(i t / N) turns z^N sqrt(N) X_N(t) into a degree
// 2N algebraic polynomial whose unit-circle roots are the real zeros. Needs
// hi - lo <= 2 pi N. Throws NumericalFailure if Aberth does not converge.
ZeroReport count_companion(const TrigPoly& p, Interval interval,
                           const CompanionOptions& opts = {});

// Coefficients (lowest degree first) of z^N sqrt(N) X_N, before trimming.
std::vector<std::complex<double>> companion_coefficients(const TrigPoly& p);

// Runs both counters; the returned report is the companion one, with
// Disagreement set when the scan count differs. Scan's NearTangency is
// carried over.
std::pair<ZeroReport, ZeroReport> count_both(const TrigPoly& p, Interval interval,
                                             const ScanOptions& scan = {},
                                             const CompanionOptions& companion = {});

// Kac counting integral (1/2 delta) int_I 1{|X_N| <= delta} |X_N'| dt. The
// indicator boundaries and the critical points of X_N split I into pieces on
// which |X_N'| is smooth; each piece is integrated by adaptive Gauss-Kronrod.
double kac_estimate(const TrigPoly& p, Interval interval, double delta);

// x (x-1) ... (x-m+1); 1 for m = 0. Throws InvalidArgument on overflow.
std::uint64_t falling_factorial(std::uint64_t x, unsigned m);

// Derivative as a polynomial of the same degree (coefficients scaled by n/N).
TrigPoly derivative(const TrigPoly& p);

}  // namespace trigzeros
