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

#include "trigzeros/coeffs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "trigzeros/errors.hpp"

namespace trigzeros {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - exp(-z)) / z, continuous at 0.
double phi1(double z) {
  if (std::abs(z) < 1e-12) return 1.0 - 0.5 * z;
  return -std::expm1(-z) / z;
}

bool bad_potential(double v) { return std::isnan(v) || v == -kInf; }

// Eight-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

std::string_view to_string(CoeffKind kind) noexcept {
  switch (kind) {
    case CoeffKind::Rademacher: return "rademacher";
    case CoeffKind::UniformScaled: return "uniform";
    case CoeffKind::Gaussian: return "gaussian";
    case CoeffKind::Cauchy: return "cauchy";
    case CoeffKind::ExpPsi: return "exppsi";
  }
  return "unknown";
}

PsiTable::PsiTable(std::vector<double> nodes, std::vector<double> psi_values)
    : nodes_(std::move(nodes)), psi_(std::move(psi_values)) {
  if (nodes_.size() < 2 || nodes_.size() != psi_.size()) {
    throw InvalidArgument("psi table needs at least two (x, psi) rows of equal length");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw InvalidArgument("psi table nodes must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < psi_.size(); ++i) {
    if (bad_potential(psi_[i])) {
      std::ostringstream msg;
      msg << "psi evaluated to " << psi_[i] << " at x = " << nodes_[i];
      diagnostic_ = msg.str();
      return;
    }
  }

  double psi_min = kInf;
  for (double v : psi_) psi_min = std::min(psi_min, v);
  psi_min_ = psi_min;
  if (psi_min == kInf) {
    diagnostic_ = "psi is +inf everywhere on the table; density has no mass";
    return;
  }

  cumulative_.resize(nodes_.size() - 1);
  double total = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const double a = nodes_[i], h = nodes_[i + 1] - a;
    const double pa = psi_[i] - psi_min, pb = psi_[i + 1] - psi_min;
    if (pa == kInf || pb == kInf) {
      cumulative_[i] = total;
      continue;
    }
    const double slope = (pb - pa) / h;
    const double w = std::exp(-pa);
    total += w * h * phi1(slope * h);
    cumulative_[i] = total;

    // Moments of the interpolated density; split steep segments so the
    // exponential is well resolved by the 8-point rule.
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(slope * h) / 2.0)));
    const double hp = h / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double lo = a + p * hp;
      for (std::size_t q = 0; q < kGlNodes.size(); ++q) {
        const double x = lo + 0.5 * hp * (kGlNodes[q] + 1.0);
        const double dens = std::exp(-(pa + slope * (x - a)));
        const double wq = 0.5 * hp * kGlWeights[q] * dens;
        m1 += wq * x;
        m2 += wq * x * x;
      }
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    diagnostic_ = "tabulated density has zero or non-finite total mass";
    return;
  }
  mean_ = m1 / total;
  variance_ = m2 / total - mean_ * mean_;
  if (!(variance_ > 0.0)) diagnostic_ = "tabulated density has no spread";
}

PsiTable PsiTable::from_function(const PsiFunction& f) {
  if (!f.psi) throw InvalidArgument("ExpPsi needs a psi callable");
  if (!(f.hi > f.lo)) throw InvalidArgument("ExpPsi support window must satisfy lo < hi");

  constexpr int kCoarse = 1024;
  constexpr double kCurvatureTol = 1e-7;
  constexpr int kMaxDepth = 20;

  std::vector<double> xs, ps;
  xs.reserve(4 * kCoarse);
  ps.reserve(4 * kCoarse);

  const double h0 = (f.hi - f.lo) / kCoarse;
  std::vector<double> coarse(kCoarse + 1);
  double psi_min = kInf;
  for (int i = 0; i <= kCoarse; ++i) {
    coarse[i] = f.psi(f.lo + i * h0);
    if (!bad_potential(coarse[i])) psi_min = std::min(psi_min, coarse[i]);
  }

  // Bisect while the linear interpolant of psi is visibly off, skipping
  // regions whose density is below exp(-60) of the peak.
  auto refine = [&](auto&& self, double a, double b, double pa, double pb, int depth) -> void {
    if (depth >= kMaxDepth || bad_potential(pa) || bad_potential(pb) ||
        std::min(pa, pb) - psi_min > 60.0) {
      xs.push_back(b);
      ps.push_back(pb);
      return;
    }
    const double mid = 0.5 * (a + b);
    double err;
    if (f.dpsi) {
      err = (b - a) * std::abs(f.dpsi(b) - f.dpsi(a));
    } else {
      err = 8.0 * std::abs(f.psi(mid) - 0.5 * (pa + pb));
    }
    if (!(err > kCurvatureTol)) {
      xs.push_back(b);
      ps.push_back(pb);
      return;
    }
    const double pm = f.psi(mid);
    self(self, a, mid, pa, pm, depth + 1);
    self(self, mid, b, pm, pb, depth + 1);
  };

  xs.push_back(f.lo);
  ps.push_back(coarse[0]);
  for (int i = 0; i < kCoarse; ++i) {
    refine(refine, f.lo + i * h0, f.lo + (i + 1) * h0, coarse[i], coarse[i + 1], 0);
  }
  return PsiTable(std::move(xs), std::move(ps));
}

PsiTable PsiTable::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open psi table '" + path + "'");
  std::vector<double> xs, ps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string xs_field, ps_field;
    if (!(fields >> xs_field)) continue;
    if (!(fields >> ps_field)) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'x psi'");
    }
    try {
      xs.push_back(std::stod(xs_field));
      // stod accepts "nan" and "inf"; those are diagnosed by the table.
      ps.push_back(std::stod(ps_field));
    } catch (const std::exception&) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return PsiTable(std::move(xs), std::move(ps));
}

double PsiTable::sample(RngStream& stream) const {
  if (!diagnostic_.empty()) throw SamplingError("ExpPsi sampling failed: " + diagnostic_);
  const double total = cumulative_.back();
  const double target = stream.uniform() * total;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  const std::size_t i = std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
  const double before = i == 0 ? 0.0 : cumulative_[i - 1];

  const double a = nodes_[i], h = nodes_[i + 1] - a;
  const double pa = psi_[i] - psi_min_, pb = psi_[i + 1] - psi_min_;
  const double slope = (pb - pa) / h;
  const double w = std::exp(-pa);
  const double r = target - before;

  double y;
  if (std::abs(slope * h) < 1e-12) {
    y = r / w;
  } else {
    y = -std::log1p(-r * slope / w) / slope;
  }
  if (!std::isfinite(y)) y = h;
  return a + std::clamp(y, 0.0, h);
}

CoeffDist CoeffDist::rademacher() { return CoeffDist(CoeffKind::Rademacher, "rademacher"); }

CoeffDist CoeffDist::uniform_scaled() {
  CoeffDist d(CoeffKind::UniformScaled, "uniform");
  d.params_["half_width"] = kSqrt3;
  return d;
}

CoeffDist CoeffDist::gaussian() {
  CoeffDist d(CoeffKind::Gaussian, "gaussian");
  d.params_["mu"] = 0.0;
  d.params_["sigma"] = 1.0;
  return d;
}

CoeffDist CoeffDist::cauchy(double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("cauchy scale must be positive");
  CoeffDist d(CoeffKind::Cauchy, "cauchy");
  d.params_["scale"] = scale;
  return d;
}

CoeffDist CoeffDist::exp_psi(std::shared_ptr<const PsiTable> table, std::string source) {
  if (!table) throw InvalidArgument("ExpPsi needs a table");
  CoeffDist d(CoeffKind::ExpPsi, "exppsi:" + source);
  if (table->diagnostic().empty()) {
    d.params_["raw_mean"] = table->mean();
    d.params_["raw_sd"] = std::sqrt(table->variance());
  }
  d.params_["nodes"] = static_cast<double>(table->size());
  d.table_ = std::move(table);
  return d;
}

double CoeffDist::sample(RngStream& stream) const {
  switch (kind_) {
    case CoeffKind::Rademacher:
      return (stream.next_u64() >> 63) ? 1.0 : -1.0;
    case CoeffKind::UniformScaled:
      return kSqrt3 * (2.0 * stream.uniform() - 1.0);
    case CoeffKind::Gaussian:
      return stream.gaussian();
    case CoeffKind::Cauchy:
      return params_.at("scale") * std::tan(std::numbers::pi * (stream.uniform_pos() - 0.5));
    case CoeffKind::ExpPsi: {
      const double raw = table_->sample(stream);
      return (raw - table_->mean()) / std::sqrt(table_->variance());
    }
  }
  return 0.0;
}

CoeffDist standardize(CoeffKind kind, const std::map<std::string, double>& raw,
                      bool exploratory) {
  auto get = [&](const char* key, double fallback) {
    const auto it = raw.find(key);
    return it == raw.end() ? fallback : it->second;
  };
  switch (kind) {
    case CoeffKind::Rademacher:
      return CoeffDist::rademacher();
    case CoeffKind::UniformScaled: {
      const double lo = get("lo", -1.0), hi = get("hi", 1.0);
      if (!(hi > lo)) throw InvalidArgument("uniform law needs lo < hi");
      // Var U[lo,hi] = (hi-lo)^2/12; after centering and scaling every
      // uniform law becomes U[-sqrt3, sqrt3].
      return CoeffDist::uniform_scaled();
    }
    case CoeffKind::Gaussian: {
      if (!(get("sigma", 1.0) > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
      return CoeffDist::gaussian();
    }
    case CoeffKind::Cauchy:
      if (!exploratory) {
        throw InvalidArgument(
            "cauchy has no variance and cannot be standardized; enable exploratory mode");
      }
      return CoeffDist::cauchy(get("scale", 1.0));
    case CoeffKind::ExpPsi:
      throw InvalidArgument("ExpPsi needs a potential; use standardize_exp_psi");
  }
  throw InvalidArgument("unknown coefficient kind");
}

CoeffDist standardize_exp_psi(const PsiFunction& psi) {
  auto table = std::make_shared<const PsiTable>(PsiTable::from_function(psi));
  return CoeffDist::exp_psi(std::move(table), "function");
}

CoeffDist parse_dist_spec(std::string_view spec, bool allow_exploratory) {
  if (spec == "rademacher") return CoeffDist::rademacher();
  if (spec == "uniform") return CoeffDist::uniform_scaled();
  if (spec == "gaussian") return CoeffDist::gaussian();
  if (spec == "cauchy") return standardize(CoeffKind::Cauchy, {}, allow_exploratory);
  constexpr std::string_view kPrefix = "exppsi:";
  if (spec.starts_with(kPrefix) && spec.size() > kPrefix.size()) {
    const std::string path(spec.substr(kPrefix.size()));
    auto table = std::make_shared<const PsiTable>(PsiTable::from_file(path));
    return CoeffDist::exp_psi(std::move(table), path);
  }
  throw InvalidArgument("unknown distribution spec '" + std::string(spec) +
                        "' (expected rademacher | uniform | gaussian | cauchy | exppsi:<file>)");
}

void sample_coeffs(const CoeffDist& dist, std::span<double> out, RngStream& stream) {
  if (out.empty() || out.size() % 2 != 0) {
    throw InvalidArgument("sample_coeffs needs an even, non-empty output buffer");
  }
  for (double& v : out) {
    v = dist.sample(stream);
    if (!std::isfinite(v)) {
      throw SamplingError("non-finite coefficient drawn from " + dist.name());
    }
  }
}

std::vector<double> sample_coeffs(const CoeffDist& dist, std::size_t n, RngStream& stream) {
  if (n == 0) throw InvalidArgument("sample_coeffs needs n >= 1");
  std::vector<double> out(2 * n);
  sample_coeffs(dist, out, stream);
  return out;
}

}  // namespace trigzeros
