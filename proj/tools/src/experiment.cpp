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

#include "trigzeros/cli/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "json.hpp"
#include "trigzeros/coeffs.hpp"
#include "trigzeros/errors.hpp"
#include "trigzeros/parallel.hpp"
#include "trigzeros/rice.hpp"
#include "trigzeros/sincproc.hpp"
#include "trigzeros/trigpoly.hpp"
#include "trigzeros/zerocount.hpp"

namespace trigzeros::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Seed offsets that keep auxiliary ensembles (KS pilot, limit-process
// reference) disjoint from the panels, which use seed + panel index.
constexpr std::uint64_t kPilotSeedOffset = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kReferenceSeedOffset = 0xD1B54A32D192ED03ull;
constexpr double kMaxFailureRate = 0.01;
constexpr double kKsLevel = 0.01;
constexpr int kKsResamples = 1000;

std::string out_path(const ExperimentConfig& c, const std::string& name) {
  return (fs::path(c.output_dir) / name).string();
}

void prepare(const ExperimentConfig& c) {
  validate(c);
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + c.output_dir + "'");
}

Json config_json(const ExperimentConfig& c) {
  Json j = Json::object();
  for (const auto& [k, v] : resolved_fields(c)) j[k] = v;
  return j;
}

Json moments_json(const std::map<int, MomentEstimate>& m) {
  Json a = Json::array();
  for (const auto& [k, e] : m) a.push_back({{"m", k}, {"estimate", e.estimate}, {"se", e.se}});
  return a;
}

Json pmf_json(const std::map<std::uint64_t, double>& pmf) {
  Json a = Json::array();
  for (const auto& [k, p] : pmf) a.push_back({{"k", k}, {"p", p}});
  return a;
}

std::string write_json(const ExperimentConfig& c, const std::string& name, Json body) {
  Json j;
  j["artifact"] = "trigzeros";
  j["version"] = version();
  j["config"] = config_json(c);
  for (auto& [k, v] : body.items()) j[k] = v;
  const std::string path = out_path(c, name);
  write_text(path, j.dump(2) + "\n");
  return path;
}

struct Ensemble {
  std::vector<CountRecord> records;
  std::vector<std::uint64_t> counts;
  std::size_t failures = 0;
  std::map<std::string, std::size_t> flag_tally;
};

Ensemble collect(std::vector<CountRecord> records) {
  Ensemble e;
  e.records = std::move(records);
  for (const auto& r : e.records) {
    if (r.failed) {
      ++e.failures;
      continue;
    }
    e.counts.push_back(static_cast<std::uint64_t>(r.count));
    for (auto f : {ZeroFlag::NearTangency, ZeroFlag::EndpointZero, ZeroFlag::Disagreement}) {
      if (r.flags & static_cast<std::uint8_t>(f)) ++e.flag_tally[flags_to_string(static_cast<std::uint8_t>(f))];
    }
  }
  return e;
}

double failure_rate(const Ensemble& e) {
  return e.records.empty() ? 0.0 : static_cast<double>(e.failures) / e.records.size();
}

std::vector<CountRecord> count_gp(const ExperimentConfig& c, std::uint64_t seed) {
  std::vector<CountRecord> records(c.replications);
  parallel_for(records.size(), c.workers, [&](std::size_t r) {
    RngStream stream(seed, r);
    CountRecord rec;
    rec.method = "spectral";
    try {
      const ZeroReport z = count_zeros_W(sample_spectral(c.freqs, stream), c.interval);
      rec.count = z.count;
      rec.flags = z.flags;
    } catch (const NumericalFailure&) {
      rec.failed = true;
    }
    records[r] = std::move(rec);
  });
  return records;
}

SummaryMeta make_meta(const ExperimentConfig& c, const std::string& dist, std::uint64_t seed,
                      int N, const std::string& method) {
  SummaryMeta m;
  m.N = N;
  m.distribution = dist;
  m.interval = c.interval;
  m.seed = seed;
  m.method = method;
  m.exploratory = dist != "sinc-process" && parse_dist_spec(dist, true).exploratory();
  return m;
}

Json summary_body(const EnsembleSummary& s, const Ensemble& e) {
  Json j;
  j["distribution"] = s.meta.distribution;
  j["N"] = s.meta.N;
  j["seed"] = s.meta.seed;
  j["method"] = s.meta.method;
  j["exploratory"] = s.meta.exploratory;
  j["replications"] = e.records.size();
  j["failures"] = e.failures;
  Json flags = Json::object();
  for (const auto& [k, v] : e.flag_tally) flags[k] = v;
  j["flags"] = flags;
  j["pmf"] = pmf_json(s.pmf);
  j["factorial_moments"] = moments_json(s.factorial_moments);
  const double limit = mean_zeros(s.meta.interval);
  const auto& m1 = s.factorial_moments.at(1);
  j["limit_mean"] = limit;
  j["limit_mean_z"] = m1.se > 0.0 ? (m1.estimate - limit) / m1.se : 0.0;
  if (s.meta.N > 0) {
    // Exact mean for Gaussian coefficients at this N (stationary Kac-Rice).
    const double n = s.meta.N;
    const double lambda2 = (n + 1.0) * (2.0 * n + 1.0) / (6.0 * n * n);
    j["gaussian_finite_n_mean"] = s.meta.interval.length() / std::numbers::pi * std::sqrt(lambda2);
  }
  const TailProfile tp = tail_profile(s);
  Json tail = Json::array();
  for (const auto& row : tp.rows) {
    tail.push_back({{"k", row.k},
                    {"survival", row.survival},
                    {"reference", row.reference},
                    {"fitted", row.fitted},
                    {"checked", row.checked},
                    {"ok", row.ok}});
  }
  j["tail_profile"] = {{"fit_k", tp.fit_k}, {"offset", tp.offset}, {"passed", tp.passed},
                       {"rows", tail}};
  return j;
}

RunResult finish_single(const ExperimentConfig& c, const std::string& dist, std::uint64_t seed,
                        int N, const std::string& method, Ensemble e, const std::string& title) {
  RunResult res;
  write_counts_csv(out_path(c, "counts.csv"), c, e.records);
  res.files.push_back(out_path(c, "counts.csv"));
  if (e.counts.empty()) {
    res.exit_code = kExitNumerical;
    res.message = "every replication failed numerically";
    return res;
  }
  EnsembleSummary s = summarize(e.counts, c.m_max, make_meta(c, dist, seed, N, method));
  write_moments_csv(out_path(c, "summary.csv"), c, s.factorial_moments);
  res.files.push_back(out_path(c, "summary.csv"));
  res.files.push_back(write_json(c, "summary.json", summary_body(s, e)));
  write_text(out_path(c, "histogram.svg"),
             histogram_svg({HistogramPanel{title, s.pmf, s.meta.exploratory ? "exploratory" : ""}},
                           title, echo_line(c)));
  res.files.push_back(out_path(c, "histogram.svg"));
  const auto& m1 = s.factorial_moments.at(1);
  res.message = "mean " + format_number(m1.estimate) + " (se " + format_number(m1.se) +
                "), limit " + format_number(mean_zeros(c.interval));
  if (failure_rate(e) > kMaxFailureRate) {
    res.exit_code = kExitNumerical;
    res.message += "; numerical failure rate " + format_number(failure_rate(e)) + " exceeds 1%";
  }
  res.summaries.push_back(std::move(s));
  return res;
}

std::string panel_title(const std::string& dist) {
  if (dist == "rademacher") return "Rademacher";
  if (dist == "uniform") return "Uniform (scaled)";
  if (dist == "gaussian") return "Gaussian";
  if (dist == "cauchy") return "Cauchy";
  return dist;
}

std::string file_tag(const std::string& dist) {
  std::string out;
  for (char ch : dist) out += (std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_');
  return out;
}

}  // namespace

std::vector<CountRecord> count_ensemble(const ExperimentConfig& c, const std::string& dist,
                                        std::uint64_t seed) {
  const CoeffDist law = parse_dist_spec(dist, true);
  std::vector<CountRecord> records(c.replications);
  const std::size_t n = static_cast<std::size_t>(c.N);
  parallel_for(records.size(), c.workers, [&](std::size_t r) {
    CountRecord rec;
    rec.method = to_string(c.method);
    try {
      std::vector<double> ab;
      if (c.debug_coeffs.empty()) {
        RngStream stream(seed, r);
        ab = sample_coeffs(law, n, stream);
      } else {
        ab = c.debug_coeffs;
      }
      const TrigPoly p = TrigPoly::from_packed(ab);
      ZeroReport z;
      switch (c.method) {
        case Method::Scan: z = count_scan(p, c.interval); break;
        case Method::Companion: z = count_companion(p, c.interval); break;
        case Method::Both: z = count_both(p, c.interval).first; break;
      }
      rec.count = z.count;
      rec.flags = z.flags;
    } catch (const NumericalFailure&) {
      rec.failed = true;
    } catch (const DegenerateInput&) {
      rec.failed = true;
    } catch (const SamplingError&) {
      rec.failed = true;
    }
    records[r] = std::move(rec);
  });
  return records;
}

RunResult run_simulate(const ExperimentConfig& c) {
  prepare(c);
  const std::string& dist = c.dists.front();
  return finish_single(c, dist, c.seed, c.N, to_string(c.method),
                       collect(count_ensemble(c, dist, c.seed)),
                       panel_title(dist) + ", N=" + std::to_string(c.N));
}

RunResult run_gp(const ExperimentConfig& c) {
  prepare(c);
  return finish_single(c, "sinc-process", c.seed, 0, "spectral", collect(count_gp(c, c.seed)),
                       "sinc-covariance process");
}

RunResult run_rice(const ExperimentConfig& c) {
  prepare(c);
  RunResult res;
  std::map<int, MomentEstimate> moments;
  moments[1] = {mean_zeros(c.interval), 0.0};
  Json body;
  body["mean"] = moments[1].estimate;
  if (c.m_max >= 2) {
    const SecondMomentResult q = second_factorial_moment(c.interval, c.epsilon);
    moments[2] = {q.value, q.error};
    body["second_factorial_moment"] = {{"value", q.value},
                                       {"error", q.error},
                                       {"converged", q.converged},
                                       {"evaluations", q.evaluations},
                                       {"excluded_area", q.excluded_area},
                                       {"note", q.note}};
    if (!q.converged) {
      res.exit_code = kExitNumerical;
      res.message = "second factorial moment quadrature did not converge; value is partial";
    }
  }
  Json mc = Json::array();
  for (int m = 2; m <= c.m_max; ++m) {
    RngStream stream(c.seed, static_cast<std::uint64_t>(m));
    FactorialMomentMc r;
    try {
      r = m_factorial_moment_mc(c.interval, m, c.epsilon,
                                static_cast<int>(std::min<std::uint64_t>(c.replications, 1u << 30)),
                                8, stream);
    } catch (const EpsilonTooLarge& e) {
      throw ConfigError(e.what());
    }
    if (m >= 3) moments[m] = {r.estimate, r.se};
    mc.push_back({{"m", m},
                  {"estimate", r.estimate},
                  {"se", r.se},
                  {"acceptance_rate", r.acceptance_rate},
                  {"nodes", r.nodes},
                  {"singular_nodes", r.singular_nodes}});
  }
  body["monte_carlo"] = mc;
  body["factorial_moments"] = moments_json(moments);
  write_moments_csv(out_path(c, "rice.csv"), c, moments);
  res.files.push_back(out_path(c, "rice.csv"));
  res.files.push_back(write_json(c, "rice.json", body));
  if (res.message.empty()) res.message = "mean " + format_number(moments[1].estimate);
  return res;
}

RunResult run_compare(const ExperimentConfig& c) {
  prepare(c);
  RunResult res;
  std::vector<EnsembleSummary> summaries;
  std::vector<HistogramPanel> panels;
  double worst_failure = 0.0;
  for (std::size_t i = 0; i < c.dists.size(); ++i) {
    const std::string& dist = c.dists[i];
    const std::uint64_t seed = c.seed + i;
    Ensemble e = collect(count_ensemble(c, dist, seed));
    worst_failure = std::max(worst_failure, failure_rate(e));
    const std::string name = "counts_" + std::to_string(i) + "_" + file_tag(dist) + ".csv";
    write_counts_csv(out_path(c, name), c, e.records);
    res.files.push_back(out_path(c, name));
    if (e.counts.empty()) {
      res.exit_code = kExitNumerical;
      res.message = "every replication failed numerically for " + dist;
      return res;
    }
    summaries.push_back(summarize(e.counts, c.m_max, make_meta(c, dist, seed, c.N,
                                                               to_string(c.method))));
    panels.push_back({panel_title(dist), summaries.back().pmf,
                      summaries.back().meta.exploratory ? "exploratory" : ""});
  }

  // Same-law null calibration from an independent Gaussian pilot ensemble.
  const std::uint64_t pilot_seed = c.seed + kPilotSeedOffset;
  ExperimentConfig pilot_cfg = c;
  Ensemble pilot = collect(count_ensemble(pilot_cfg, "gaussian", pilot_seed));
  if (pilot.counts.empty()) throw NumericalFailure("pilot ensemble failed", 0.0);
  RngStream boot(pilot_seed, ~0ull);
  ReportOptions opt;
  opt.m_max = std::min(3, c.m_max);
  opt.ks_threshold = ks_null_threshold(pilot.counts, c.replications, c.replications, kKsLevel,
                                       kKsResamples, boot);

  std::optional<EnsembleSummary> reference;
  if (c.reference) {
    Ensemble g = collect(count_gp(c, c.seed + kReferenceSeedOffset));
    if (!g.counts.empty()) {
      reference = summarize(g.counts, c.m_max,
                            make_meta(c, "sinc-process", c.seed + kReferenceSeedOffset, 0,
                                      "spectral"));
      panels.push_back({"sinc-covariance process", reference->pmf, "reference"});
    }
  }
  std::optional<std::map<int, MomentEstimate>> rice;
  if (c.rice) {
    rice.emplace();
    (*rice)[1] = {mean_zeros(c.interval), 0.0};
    if (c.epsilon > 0.0 && c.epsilon < c.interval.length() / 4.0) {
      const SecondMomentResult q = second_factorial_moment(c.interval, c.epsilon);
      (*rice)[2] = {q.value, q.error};
    }
  }

  const UniversalityReport rep = universality_report(
      summaries, reference ? &*reference : nullptr, rice ? &*rice : nullptr, opt);

  Json body;
  body["ks_level"] = kKsLevel;
  body["ks_threshold"] = opt.ks_threshold;
  body["pilot_seed"] = pilot_seed;
  Json ks = Json::array();
  std::string csv = "# trigzeros " + version() + "\n# config " + echo_line(c) +
                    "\nkind,a,b,m,value,reference,z,status,gating\n";
  for (const auto& row : rep.ks) {
    ks.push_back({{"a", row.a},
                  {"b", row.b},
                  {"statistic", row.statistic},
                  {"threshold", row.threshold},
                  {"status", to_string(row.status)},
                  {"gating", row.gating}});
    csv += "ks," + row.a + "," + row.b + ",," + format_number(row.statistic) + "," +
           format_number(row.threshold) + ",," + to_string(row.status) + "," +
           (row.gating ? "true" : "false") + "\n";
  }
  Json mom = Json::array();
  for (const auto& row : rep.moments) {
    mom.push_back({{"label", row.label},
                   {"reference", row.reference},
                   {"m", row.m},
                   {"estimate", row.estimate},
                   {"se", row.se},
                   {"reference_estimate", row.ref_estimate},
                   {"reference_se", row.ref_se},
                   {"z", row.z},
                   {"status", to_string(row.status)},
                   {"gating", false}});
    csv += "moment," + row.label + "," + row.reference + "," + std::to_string(row.m) + "," +
           format_number(row.estimate) + "," + format_number(row.ref_estimate) + "," +
           format_number(row.z) + "," + to_string(row.status) + ",false\n";
  }
  body["ks"] = ks;
  body["moments"] = mom;
  body["passed"] = rep.passed;
  Json sums = Json::array();
  for (const auto& s : summaries) {
    sums.push_back({{"distribution", s.meta.distribution},
                    {"seed", s.meta.seed},
                    {"exploratory", s.meta.exploratory},
                    {"factorial_moments", moments_json(s.factorial_moments)},
                    {"pmf", pmf_json(s.pmf)}});
  }
  body["summaries"] = sums;
  res.files.push_back(write_json(c, "report.json", body));
  write_text(out_path(c, "report.csv"), csv);
  res.files.push_back(out_path(c, "report.csv"));
  write_text(out_path(c, "histogram.svg"),
             histogram_svg(panels, "zero counts, N=" + std::to_string(c.N), echo_line(c)));
  res.files.push_back(out_path(c, "histogram.svg"));

  res.summaries = std::move(summaries);
  res.exit_code = rep.passed ? kExitOk : kExitNumerical;
  res.message = rep.passed ? "all non-exploratory comparisons pass"
                           : "a non-exploratory comparison exceeds the calibrated KS threshold";
  if (worst_failure > kMaxFailureRate) {
    res.exit_code = kExitNumerical;
    res.message += "; numerical failure rate exceeds 1%";
  }
  return res;
}

RunResult run_figure1(const ExperimentConfig& c) {
  prepare(c);
  RunResult res;
  const std::vector<std::string> dists = {"rademacher", "uniform", "gaussian", "cauchy"};
  std::vector<HistogramPanel> panels;
  Json jp = Json::array();
  double worst_failure = 0.0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const std::uint64_t seed = c.seed + i;
    Ensemble e = collect(count_ensemble(c, dists[i], seed));
    worst_failure = std::max(worst_failure, failure_rate(e));
    if (e.counts.empty()) {
      res.exit_code = kExitNumerical;
      res.message = "every replication failed numerically for " + dists[i];
      return res;
    }
    EnsembleSummary s =
        summarize(e.counts, c.m_max, make_meta(c, dists[i], seed, c.N, to_string(c.method)));
    std::string csv = "# trigzeros " + version() + "\n# config " + echo_line(c) +
                      "\n# panel " + panel_title(dists[i]) + "\nk,pmf\n";
    std::uint64_t mode = 0;
    double best = -1.0;
    for (const auto& [k, p] : s.pmf) {
      csv += std::to_string(k) + "," + format_number(p) + "\n";
      if (p > best) {
        best = p;
        mode = k;
      }
    }
    const std::string name = "panel_" + std::to_string(i + 1) + "_" + dists[i] + ".csv";
    write_text(out_path(c, name), csv);
    res.files.push_back(out_path(c, name));
    jp.push_back({{"title", panel_title(dists[i])},
                  {"distribution", dists[i]},
                  {"seed", seed},
                  {"exploratory", s.meta.exploratory},
                  {"mode", mode},
                  {"failures", e.failures},
                  {"pmf", pmf_json(s.pmf)},
                  {"factorial_moments", moments_json(s.factorial_moments)}});
    panels.push_back({panel_title(dists[i]), s.pmf, s.meta.exploratory ? "exploratory" : ""});
    res.summaries.push_back(std::move(s));
  }
  write_text(out_path(c, "figure1.svg"),
             histogram_svg(panels,
                           "number of zeros of X_" + std::to_string(c.N) + " on [" +
                               format_number(c.interval.lo) + ", " + format_number(c.interval.hi) +
                               "]",
                           echo_line(c)));
  res.files.push_back(out_path(c, "figure1.svg"));
  Json body;
  body["panels"] = jp;
  res.files.push_back(write_json(c, "figure1.json", body));
  res.message = "wrote 4 panels";
  if (worst_failure > kMaxFailureRate) {
    res.exit_code = kExitNumerical;
    res.message += "; numerical failure rate exceeds 1%";
  }
  return res;
}

RunResult run(const ExperimentConfig& c) {
  switch (c.command) {
    case Command::Simulate: return run_simulate(c);
    case Command::Gp: return run_gp(c);
    case Command::Rice: return run_rice(c);
    case Command::Compare: return run_compare(c);
    case Command::Figure1: return run_figure1(c);
  }
  throw ConfigError("unknown command");
}

}  // namespace trigzeros::cli
