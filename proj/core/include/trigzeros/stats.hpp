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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trigzeros/quadrature.hpp"
#include "trigzeros/rng.hpp"

namespace trigzeros {

struct SummaryMeta {
  int N = 0;  // 0 for the limit process
  std::string distribution;
  Interval interval;
  std::uint64_t seed = 0;
  std::string method;
  bool exploratory = false;  // outside the hypotheses of the limit theorem
};

struct MomentEstimate {
  double estimate = 0.0;
  double se = 0.0;
};

struct EnsembleSummary {
  std::vector<std::uint64_t> counts;
  std::map<std::uint64_t, double> pmf;
  std::map<int, MomentEstimate> factorial_moments;  // m -> E[Z (Z-1) ... (Z-m+1)]
  SummaryMeta meta;

  std::size_t replications() const noexcept { return counts.size(); }
};

// pmf plus factorial moments m = 0..m_max with leave-one-out jackknife
// standard errors. Throws InvalidArgument on empty input.
EnsembleSummary summarize(std::span<const std::uint64_t> counts, int m_max, SummaryMeta meta = {});

struct KsResult {
  double statistic = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

// Two-sample Kolmogorov-Smirnov distance between right-continuous empirical
// CDFs of integer data.
KsResult ks_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// (1 - level) quantile of the KS distance between two independent resamples of
// sizes n_a and n_b drawn from the empirical law of `pilot`. Counts are
// discrete, so the null law is simulated rather than taken from asymptotics.
double ks_null_threshold(std::span<const std::uint64_t> pilot, std::size_t n_a, std::size_t n_b,
                         double level, int resamples, RngStream& stream);

struct TailRow {
  std::uint64_t k = 0;
  double survival = 0.0;      // P(Z >= k)
  double log_survival = 0.0;  // -inf when survival is 0
  double reference = 0.0;     // log(|I|^{k-1/2} / sqrt(k! (k-1)!))
  double fitted = 0.0;        // reference + offset
  bool has_data = false;      // survival > 0
  bool checked = false;       // beyond the fit point and above the noise floor
  bool ok = true;
};

struct TailProfile {
  std::vector<TailRow> rows;
  std::uint64_t fit_k = 0;  // 0 when no k has survival < 0.5
  double offset = 0.0;
  double noise_floor = 0.0;  // 10 / replications
  bool passed = true;
  std::vector<std::uint64_t> violations;
};

double tail_reference(std::uint64_t k, double length);

// Rows k = 1..max count, offset fitted at the first k with survival < 0.5.
TailProfile tail_profile(const EnsembleSummary& summary);

enum class CheckStatus { Pass, Fail, Exploratory };
std::string to_string(CheckStatus s);

struct KsRow {
  std::string a, b;
  double statistic = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::Pass;
  bool gating = false;
};

struct MomentRow {
  std::string label;      // summary under test
  std::string reference;  // "sinc-process" or "rice"
  int m = 0;
  double estimate = 0.0, se = 0.0;
  double ref_estimate = 0.0, ref_se = 0.0;
  double z = 0.0;  // gap / combined se (0 when both se vanish and the gap is 0)
  CheckStatus status = CheckStatus::Pass;
};

struct ReportOptions {
  double ks_threshold = 0.0;  // calibrated same-law threshold
  double moment_z = 3.0;      // declared threshold for the moment table
  int m_max = 3;
};

struct UniversalityReport {
  std::vector<KsRow> ks;
  std::vector<MomentRow> moments;
  bool passed = true;  // all gating rows pass
};

// Pairwise KS between summaries (gating unless a side is exploratory), KS and
// factorial-moment rows against the limit-process reference, and moment rows
// against Rice values. Moment rows and reference rows are diagnostic: finite-N
// bias is not a failure of the limit theorem. Mismatched intervals throw
// InvalidArgument.
UniversalityReport universality_report(std::span<const EnsembleSummary> summaries,
                                       const EnsembleSummary* reference,
                                       const std::map<int, MomentEstimate>* rice,
                                       const ReportOptions& options);

}  // namespace trigzeros
