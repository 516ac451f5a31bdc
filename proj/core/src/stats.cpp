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

#include "trigzeros/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trigzeros/errors.hpp"

namespace trigzeros {

namespace {

// x (x-1) ... (x-m+1) in floating point; counts are small, so this is exact
// for every order used here.
double falling(std::uint64_t x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= static_cast<double>(x) - i;
  return r;
}

double ks_from_histograms(const std::vector<std::uint64_t>& ha, std::size_t na,
                          const std::vector<std::uint64_t>& hb, std::size_t nb) {
  double ca = 0.0, cb = 0.0, d = 0.0;
  for (std::size_t v = 0; v < ha.size(); ++v) {
    ca += static_cast<double>(ha[v]);
    cb += static_cast<double>(hb[v]);
    d = std::max(d, std::abs(ca / na - cb / nb));
  }
  return d;
}

bool same_interval(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

std::string label_of(const EnsembleSummary& s, std::size_t index) {
  std::string out = s.meta.distribution.empty() ? "summary" : s.meta.distribution;
  if (s.meta.N > 0) out += "@N=" + std::to_string(s.meta.N);
  return out + "#" + std::to_string(index);
}

}  // namespace

EnsembleSummary summarize(std::span<const std::uint64_t> counts, int m_max, SummaryMeta meta) {
  if (counts.empty()) throw InvalidArgument("summarize needs at least one count");
  if (m_max < 0) throw InvalidArgument("m_max must be nonnegative");
  EnsembleSummary s;
  s.counts.assign(counts.begin(), counts.end());
  s.meta = std::move(meta);
  const double n = static_cast<double>(counts.size());

  std::map<std::uint64_t, std::size_t> tally;
  for (const auto c : counts) ++tally[c];
  for (const auto& [value, k] : tally) s.pmf[value] = static_cast<double>(k) / n;

  s.factorial_moments[0] = {1.0, 0.0};
  std::vector<double> f(counts.size());
  for (int m = 1; m <= m_max; ++m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      f[i] = falling(counts[i], m);
      sum += f[i];
    }
    const double mean = sum / n;
    double se = 0.0;
    if (counts.size() > 1) {
      // Leave-one-out means theta_i = (sum - f_i) / (n - 1).
      double theta_bar = 0.0;
      for (const double fi : f) theta_bar += (sum - fi) / (n - 1.0);
      theta_bar /= n;
      double ss = 0.0;
      for (const double fi : f) {
        const double d = (sum - fi) / (n - 1.0) - theta_bar;
        ss += d * d;
      }
      se = std::sqrt((n - 1.0) / n * ss);
    }
    s.factorial_moments[m] = {mean, se};
  }
  return s;
}

KsResult ks_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.empty() || b.empty()) throw InvalidArgument("ks_two_sample needs nonempty samples");
  std::vector<std::uint64_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() || j < sb.size()) {
    std::uint64_t v;
    if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) v = sa[i];
    else v = sb[j];
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return {d, sa.size(), sb.size()};
}

double ks_null_threshold(std::span<const std::uint64_t> pilot, std::size_t n_a, std::size_t n_b,
                         double level, int resamples, RngStream& stream) {
  if (pilot.empty() || n_a == 0 || n_b == 0) {
    throw InvalidArgument("ks_null_threshold needs a nonempty pilot and sample sizes");
  }
  if (!(level > 0.0 && level < 1.0) || resamples < 10) {
    throw InvalidArgument("ks_null_threshold needs 0 < level < 1 and >= 10 resamples");
  }
  const std::uint64_t top = *std::max_element(pilot.begin(), pilot.end());
  const double np = static_cast<double>(pilot.size());
  std::vector<std::uint64_t> ha(top + 1), hb(top + 1);
  std::vector<double> stats(resamples);
  const auto draw = [&]() {
    auto idx = static_cast<std::size_t>(stream.uniform() * np);
    return pilot[std::min(idx, pilot.size() - 1)];
  };
  for (int r = 0; r < resamples; ++r) {
    std::fill(ha.begin(), ha.end(), 0);
    std::fill(hb.begin(), hb.end(), 0);
    for (std::size_t i = 0; i < n_a; ++i) ++ha[draw()];
    for (std::size_t i = 0; i < n_b; ++i) ++hb[draw()];
    stats[r] = ks_from_histograms(ha, n_a, hb, n_b);
  }
  std::sort(stats.begin(), stats.end());
  const auto q = static_cast<std::size_t>(std::ceil((1.0 - level) * resamples)) - 1;
  return stats[std::min(q, stats.size() - 1)];
}

double tail_reference(std::uint64_t k, double length) {
  if (k == 0) throw InvalidArgument("tail_reference needs k >= 1");
  const double kd = static_cast<double>(k);
  return (kd - 0.5) * std::log(length) - 0.5 * (std::lgamma(kd + 1.0) + std::lgamma(kd));
}

TailProfile tail_profile(const EnsembleSummary& summary) {
  TailProfile out;
  if (summary.counts.empty()) return out;
  const double length = summary.meta.interval.length();
  const double n = static_cast<double>(summary.counts.size());
  out.noise_floor = 10.0 / n;
  const std::uint64_t top = *std::max_element(summary.counts.begin(), summary.counts.end());
  if (top == 0 || !(length > 0.0)) return out;

  std::vector<std::uint64_t> hist(top + 1);
  for (const auto c : summary.counts) ++hist[c];
  std::uint64_t at_least = summary.counts.size();
  for (std::uint64_t k = 1; k <= top; ++k) {
    at_least -= hist[k - 1];
    TailRow row;
    row.k = k;
    row.survival = static_cast<double>(at_least) / n;
    row.has_data = at_least > 0;
    row.log_survival = row.has_data ? std::log(row.survival)
                                    : -std::numeric_limits<double>::infinity();
    row.reference = tail_reference(k, length);
    out.rows.push_back(row);
  }
  for (const auto& row : out.rows) {
    if (row.survival < 0.5) {
      out.fit_k = row.k;
      out.offset = row.log_survival - row.reference;
      break;
    }
  }
  for (auto& row : out.rows) {
    row.fitted = row.reference + out.offset;
    if (out.fit_k == 0 || row.k <= out.fit_k || row.survival <= out.noise_floor) continue;
    row.checked = true;
    row.ok = row.log_survival <= row.fitted + 1e-12;
    if (!row.ok) {
      out.passed = false;
      out.violations.push_back(row.k);
    }
  }
  return out;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Exploratory: return "exploratory";
  }
  return "unknown";
}

UniversalityReport universality_report(std::span<const EnsembleSummary> summaries,
                                       const EnsembleSummary* reference,
                                       const std::map<int, MomentEstimate>* rice,
                                       const ReportOptions& options) {
  if (summaries.empty()) throw InvalidArgument("universality_report needs summaries");
  const Interval interval = summaries.front().meta.interval;
  for (const auto& s : summaries) {
    if (!same_interval(s.meta.interval, interval)) {
      throw InvalidArgument("universality_report: summaries do not share an interval");
    }
  }
  if (reference && !same_interval(reference->meta.interval, interval)) {
    throw InvalidArgument("universality_report: reference interval differs");
  }

  UniversalityReport rep;
  const auto ks_row = [&](const EnsembleSummary& a, const std::string& la, const EnsembleSummary& b,
                          const std::string& lb, bool gating) {
    KsRow row;
    row.a = la;
    row.b = lb;
    row.statistic = ks_two_sample(a.counts, b.counts).statistic;
    row.threshold = options.ks_threshold;
    if (a.meta.exploratory || b.meta.exploratory) {
      row.status = CheckStatus::Exploratory;
    } else {
      row.status = row.statistic <= options.ks_threshold ? CheckStatus::Pass : CheckStatus::Fail;
      row.gating = gating;
    }
    if (row.gating && row.status == CheckStatus::Fail) rep.passed = false;
    rep.ks.push_back(row);
  };
  const auto moment_row = [&](const EnsembleSummary& s, const std::string& label,
                              const std::string& ref_name, int m, MomentEstimate ref) {
    const auto it = s.factorial_moments.find(m);
    if (it == s.factorial_moments.end()) return;
    MomentRow row;
    row.label = label;
    row.reference = ref_name;
    row.m = m;
    row.estimate = it->second.estimate;
    row.se = it->second.se;
    row.ref_estimate = ref.estimate;
    row.ref_se = ref.se;
    const double gap = row.estimate - row.ref_estimate;
    const double comb = std::hypot(row.se, row.ref_se);
    row.z = comb > 0.0 ? gap / comb : (gap == 0.0 ? 0.0 : std::copysign(INFINITY, gap));
    if (s.meta.exploratory) row.status = CheckStatus::Exploratory;
    else row.status = std::abs(row.z) <= options.moment_z ? CheckStatus::Pass : CheckStatus::Fail;
    rep.moments.push_back(row);
  };

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < summaries.size(); ++i) labels.push_back(label_of(summaries[i], i));
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    for (std::size_t j = i + 1; j < summaries.size(); ++j) {
      ks_row(summaries[i], labels[i], summaries[j], labels[j], true);
    }
  }
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    if (reference) {
      ks_row(summaries[i], labels[i], *reference, "sinc-process", false);
      for (int m = 1; m <= options.m_max; ++m) {
        const auto it = reference->factorial_moments.find(m);
        if (it != reference->factorial_moments.end()) {
          moment_row(summaries[i], labels[i], "sinc-process", m, it->second);
        }
      }
    }
    if (rice) {
      for (const auto& [m, value] : *rice) {
        if (m >= 1 && m <= options.m_max) moment_row(summaries[i], labels[i], "rice", m, value);
      }
    }
  }
  return rep;
}

}  // namespace trigzeros
