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

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trigzeros/rng.hpp"

namespace trigzeros {

enum class CoeffKind { Rademacher, UniformScaled, Gaussian, Cauchy, ExpPsi };

std::string_view to_string(CoeffKind kind) noexcept;

// Log-density potential for the ExpPsi family: density proportional to
// exp(-psi(x)). dpsi is optional; when present it drives the adaptive
// tabulation step.
struct PsiFunction {
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  double lo = -20.0;  // support window used for tabulation
  double hi = 20.0;
};

// Piecewise-linear tabulation of psi. Sampling inverts the CDF of
// exp(-psi_interp) in closed form on each segment.
class PsiTable {
 public:
  PsiTable(std::vector<double> nodes, std::vector<double> psi_values);

  static PsiTable from_function(const PsiFunction& f);
  static PsiTable from_file(const std::string& path);

  // Draw from the (unstandardized) tabulated density.
  double sample(RngStream& stream) const;

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  // Non-empty when the table contains a NaN or -inf potential value.
  const std::string& diagnostic() const noexcept { return diagnostic_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> psi_;
  std::vector<double> cumulative_;  // cumulative mass at the right end of each segment
  double psi_min_ = 0.0;
  double mean_ = 0.0;
  double variance_ = 0.0;
  std::string diagnostic_;
};

// A named coefficient law. All conforming laws are centered with unit
// variance; Cauchy is carried only for exploratory comparisons.
class CoeffDist {
 public:
  static CoeffDist rademacher();
  static CoeffDist uniform_scaled();  // U[-sqrt3, sqrt3]
  static CoeffDist gaussian();
  static CoeffDist cauchy(double scale = 1.0);
  // Standardized exp(-psi) law (affine map of the tabulated density).
  static CoeffDist exp_psi(std::shared_ptr<const PsiTable> table, std::string source);

  CoeffKind kind() const noexcept { return kind_; }
  // Finite variance, centered, unit variance.
  bool conforming() const noexcept { return kind_ != CoeffKind::Cauchy; }
  bool exploratory() const noexcept { return !conforming(); }
  const std::map<std::string, double>& params() const noexcept { return params_; }
  // Canonical spec string: "gaussian", "exppsi:<file>", ...
  const std::string& name() const noexcept { return name_; }

  double sample(RngStream& stream) const;

 private:
  CoeffDist(CoeffKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  CoeffKind kind_;
  std::string name_;
  std::map<std::string, double> params_;
  std::shared_ptr<const PsiTable> table_;
};

// Bring a raw parameterization to unit variance.
//   Rademacher:    {} -> unchanged
//   UniformScaled: {lo, hi} (default [-1, 1]) -> U[-sqrt3, sqrt3]
//   Gaussian:      {mu, sigma} -> N(0, 1)
//   Cauchy:        rejected unless exploratory is set; {scale} kept as given
// ExpPsi needs a potential and goes through standardize_exp_psi.
CoeffDist standardize(CoeffKind kind, const std::map<std::string, double>& raw_params,
                      bool exploratory = false);
CoeffDist standardize_exp_psi(const PsiFunction& psi);

// Parses `rademacher | uniform | gaussian | cauchy | exppsi:<file>`.
// Throws InvalidArgument on an unknown spec, or on cauchy when exploratory
// use was not requested.
CoeffDist parse_dist_spec(std::string_view spec, bool allow_exploratory);

// Fills out with 2n iid draws: a_1..a_n followed by b_1..b_n.
void sample_coeffs(const CoeffDist& dist, std::span<double> out, RngStream& stream);
std::vector<double> sample_coeffs(const CoeffDist& dist, std::size_t n, RngStream& stream);

}  // namespace trigzeros
