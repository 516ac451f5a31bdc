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

#include "trigzeros/zerocount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "trigzeros/aberth.hpp"
#include "trigzeros/errors.hpp"

namespace trigzeros {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

int sign_of(double v) { return v > 0.0 ? 1 : -1; }

using ValueSlope = std::pair<double, double>;

// Safeguarded Newton on a sign-change bracket.
template <typename F>
double refine_root(const F& f, double a, double b, double fa, double fb, double tol) {
  double xl = a, xh = b;
  if (fa > 0.0) std::swap(xl, xh);  // f(xl) < 0 < f(xh)
  double x = std::abs(fa) < std::abs(fb) ? a : b;
  auto [fx, dfx] = f(x);
  double step_old = std::abs(b - a), step = step_old;
  for (int it = 0; it < 100; ++it) {
    const double lo = std::min(xl, xh), hi = std::max(xl, xh);
    const double newton = dfx != 0.0 ? x - fx / dfx : std::numeric_limits<double>::quiet_NaN();
    if (!(newton > lo && newton < hi) || std::abs(2.0 * fx) > std::abs(step_old * dfx)) {
      step_old = step;
      step = 0.5 * (hi - lo);
      x = lo + step;
    } else {
      step_old = step;
      step = std::abs(newton - x);
      x = newton;
    }
    std::tie(fx, dfx) = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) xl = x; else xh = x;
    if (step < tol || std::abs(xh - xl) < tol) break;
  }
  return x;
}

// Zero of the slope on [a, b] (slopes sa, sb of opposite sign) by Illinois
// regula falsi. Returns the abscissa; *value receives f there.
template <typename F>
double locate_extremum(const F& f, double a, double b, double sa, double sb, double tol,
                       double* value) {
  int side = 0;
  double x = 0.5 * (a + b);
  ValueSlope at = f(x);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    x = (a * sb - b * sa) / (sb - sa);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    at = f(x);
    const double sx = at.second;
    if (sx == 0.0) break;
    if (sign_of(sx) == sign_of(sb)) {
      b = x;
      sb = sx;
      if (side == -1) sa *= 0.5;
      side = -1;
    } else {
      a = x;
      sa = sx;
      if (side == 1) sb *= 0.5;
      side = 1;
    }
  }
  *value = at.first;
  return x;
}

void horner_pair(std::span<const std::complex<double>> c0, std::span<const std::complex<double>> c1,
                 double theta, double norm, double* v, double* d) {
  const double zr = std::cos(theta), zi = std::sin(theta);
  const std::size_t n = c0.size();
  double vr = c0[n - 1].real(), vi = c0[n - 1].imag();
  double dr = c1[n - 1].real(), di = c1[n - 1].imag();
  for (std::size_t k = n - 1; k-- > 0;) {
    const double tv = vr * zr - vi * zi + c0[k].real();
    vi = vr * zi + vi * zr + c0[k].imag();
    vr = tv;
    const double td = dr * zr - di * zi + c1[k].real();
    di = dr * zi + di * zr + c1[k].imag();
    dr = td;
  }
  *v = (vr * zr - vi * zi) * norm;
  *d = (dr * zr - di * zi) * norm;
}

}  // namespace

std::string to_string(CountMethod m) {
  switch (m) {
    case CountMethod::Scan: return "scan";
    case CountMethod::Companion: return "companion";
    case CountMethod::Kac: return "kac";
  }
  return "unknown";
}

std::string flags_to_string(std::uint8_t flags) {
  std::string out;
  auto add = [&](ZeroFlag f, const char* name) {
    if (flags & static_cast<std::uint8_t>(f)) {
      if (!out.empty()) out += '|';
      out += name;
    }
  };
  add(ZeroFlag::NearTangency, "NearTangency");
  add(ZeroFlag::EndpointZero, "EndpointZero");
  add(ZeroFlag::Disagreement, "Disagreement");
  return out;
}

TrigPolyTarget::TrigPolyTarget(const TrigPoly& p, int derivative)
    : degree_(p.degree()),
      norm_(1.0 / std::sqrt(static_cast<double>(p.degree()))),
      c0_(p.horner_coeffs(derivative)),
      c1_(p.horner_coeffs(derivative + 1)) {}

void TrigPolyTarget::sample(std::span<const double> grid, std::span<double> values,
                            std::span<double> slopes) const {
  for (std::size_t j = 0; j < grid.size(); ++j) {
    horner_pair(c0_, c1_, grid[j] / degree_, norm_, &values[j], &slopes[j]);
  }
}

std::pair<double, double> TrigPolyTarget::value_slope(double t) const {
  double v, d;
  horner_pair(c0_, c1_, t / degree_, norm_, &v, &d);
  return {v, d};
}

ZeroReport scan_zeros(const ScanTarget& target, Interval interval, const ScanOptions& opts,
                      double level) {
  if (!(interval.lo < interval.hi)) throw InvalidArgument("scan needs lo < hi");
  if (opts.base_points < 64) throw InvalidArgument("scan needs base_points >= 64");
  const double length = interval.length();
  const int cells = std::max(
      opts.base_points,
      static_cast<int>(std::ceil(8.0 * length * target.bandwidth() / std::numbers::pi)));
  const double h = length / cells;

  std::vector<double> grid(cells + 1), v(cells + 1), s(cells + 1);
  for (int j = 0; j < cells; ++j) grid[j] = interval.lo + h * j;
  grid[cells] = interval.hi;
  target.sample(grid, v, s);

  double scale = std::abs(level);
  for (double& x : v) {
    scale = std::max(scale, std::abs(x));
    x -= level;
  }
  const double snap = 64.0 * kEps * scale;
  const double tol = opts.refine_tol * length;

  auto f = [&](double t) {
    auto vs = target.value_slope(t);
    vs.first -= level;
    return vs;
  };

  ZeroReport rep;
  rep.method = CountMethod::Scan;
  std::vector<char> is_zero(cells + 1);
  for (int j = 0; j <= cells; ++j) is_zero[j] = std::abs(v[j]) <= snap;

  for (int j = 0; j <= cells; ++j) {
    if (!is_zero[j]) continue;
    if (j == 0 || j == cells) {
      rep.roots.push_back(grid[j]);
      rep.set(ZeroFlag::EndpointZero);
      continue;
    }
    if (is_zero[j - 1] || is_zero[j + 1]) {
      rep.roots.push_back(grid[j]);
      rep.set(ZeroFlag::NearTangency);
    } else if (sign_of(v[j - 1]) != sign_of(v[j + 1])) {
      rep.roots.push_back(grid[j]);
    } else {
      rep.set(ZeroFlag::NearTangency);  // touches zero without crossing
    }
  }

  for (int j = 0; j < cells; ++j) {
    if (is_zero[j] || is_zero[j + 1]) continue;
    const int sg = sign_of(v[j]);
    if (sg != sign_of(v[j + 1])) {
      rep.roots.push_back(refine_root(f, grid[j], grid[j + 1], v[j], v[j + 1], tol));
      continue;
    }
    // |f| decreases into the cell and increases out of it: look at the minimum.
    if (sg * s[j] < 0.0 && sg * s[j + 1] > 0.0) {
      double fc = 0.0;
      const double c = locate_extremum(f, grid[j], grid[j + 1], s[j], s[j + 1], tol, &fc);
      const double depth_scale = std::max(std::abs(s[j]), std::abs(s[j + 1])) * h;
      if (std::abs(fc) <= opts.tangency_tol * depth_scale || std::abs(fc) <= snap) {
        rep.set(ZeroFlag::NearTangency);
      }
      if (std::abs(fc) > snap && sign_of(fc) != sg) {
        rep.roots.push_back(refine_root(f, grid[j], c, v[j], fc, tol));
        rep.roots.push_back(refine_root(f, c, grid[j + 1], fc, v[j + 1], tol));
      }
    }
  }

  std::sort(rep.roots.begin(), rep.roots.end());
  rep.roots.erase(std::unique(rep.roots.begin(), rep.roots.end()), rep.roots.end());
  rep.count = static_cast<int>(rep.roots.size());
  return rep;
}

ZeroReport count_scan(const TrigPoly& p, Interval interval, const ScanOptions& opts) {
  if (p.is_zero()) throw DegenerateInput("all coefficients are zero");
  return scan_zeros(TrigPolyTarget(p), interval, opts);
}

std::vector<std::complex<double>> companion_coefficients(const TrigPoly& p) {
  const int n_deg = p.degree();
  std::vector<std::complex<double>> c(2 * n_deg + 1, 0.0);
  for (int n = 1; n <= n_deg; ++n) {
    const double a = p.a()[n - 1], b = p.b()[n - 1];
    c[n_deg + n] = std::complex<double>(0.5 * a, -0.5 * b);
    c[n_deg - n] = std::complex<double>(0.5 * a, 0.5 * b);
  }
  return c;
}

ZeroReport count_companion(const TrigPoly& p, Interval interval, const CompanionOptions& opts) {
  if (!(interval.lo < interval.hi)) throw InvalidArgument("companion needs lo < hi");
  const double period = p.period();
  if (interval.length() > period * (1.0 + 1e-12)) {
    throw InvalidArgument("companion counting needs hi - lo <= 2 pi N");
  }
  if (p.is_zero()) throw DegenerateInput("all coefficients are zero");

  auto c = companion_coefficients(p);
  std::size_t top = c.size() - 1, bottom = 0;
  while (c[top] == 0.0) --top;
  while (c[bottom] == 0.0) ++bottom;  // roots at z = 0 are never on the circle
  std::vector<std::complex<double>> poly(c.begin() + bottom, c.begin() + top + 1);
  double cmax = 0.0;
  for (const auto& x : poly) cmax = std::max(cmax, std::abs(x));
  for (auto& x : poly) x /= cmax;

  AberthOptions aopts;
  aopts.max_sweeps = opts.max_sweeps;
  const AberthResult res = aberth_roots(poly, aopts);

  const int n_deg = p.degree();
  const TrigPolyTarget target(p);
  const double end_tol = 1e-9 * std::max(1.0, interval.length());

  ZeroReport rep;
  rep.method = CountMethod::Companion;
  for (const auto& z : res.roots) {
    const double dev = std::abs(std::abs(z) - 1.0);
    const double t0 = n_deg * std::arg(z);
    const double kmin = std::ceil((interval.lo - end_tol - t0) / period);
    const double kmax = std::floor((interval.hi + end_tol - t0) / period);
    if (dev >= opts.circle_tol) {
      if (dev < opts.tangency_band && kmin <= kmax) rep.set(ZeroFlag::NearTangency);
      continue;
    }
    for (double k = kmin; k <= kmax; k += 1.0) {
      double t = t0 + k * period;
      // Newton polish on the real function; keep only improving steps.
      auto [ft, dft] = target.value_slope(t);
      for (int it = 0; it < 3 && dft != 0.0; ++it) {
        const double cand = t - ft / dft;
        if (std::abs(cand - t) > 1e-6) break;
        const auto [fc, dfc] = target.value_slope(cand);
        if (!(std::abs(fc) < std::abs(ft))) break;
        t = cand;
        ft = fc;
        dft = dfc;
      }
      if (t <= interval.lo + end_tol && std::abs(t - interval.lo) <= end_tol) {
        t = interval.lo;
        rep.set(ZeroFlag::EndpointZero);
      } else if (t >= interval.hi - end_tol && std::abs(t - interval.hi) <= end_tol) {
        t = interval.hi;
        rep.set(ZeroFlag::EndpointZero);
      }
      if (t >= interval.lo && t <= interval.hi) rep.roots.push_back(t);
    }
  }
  std::sort(rep.roots.begin(), rep.roots.end());
  rep.count = static_cast<int>(rep.roots.size());
  return rep;
}

std::pair<ZeroReport, ZeroReport> count_both(const TrigPoly& p, Interval interval,
                                             const ScanOptions& scan,
                                             const CompanionOptions& companion) {
  ZeroReport s = count_scan(p, interval, scan);
  ZeroReport c = count_companion(p, interval, companion);
  if (s.has(ZeroFlag::NearTangency)) c.set(ZeroFlag::NearTangency);
  if (s.count != c.count) {
    c.set(ZeroFlag::Disagreement);
    s.set(ZeroFlag::Disagreement);
  }
  return {std::move(c), std::move(s)};
}

double kac_estimate(const TrigPoly& p, Interval interval, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("kac_estimate needs delta > 0");
  if (!(interval.lo < interval.hi)) throw InvalidArgument("kac_estimate needs lo < hi");
  if (p.is_zero()) return 0.0;

  const TrigPolyTarget target(p);
  std::vector<double> cuts = {interval.lo, interval.hi};
  for (double level : {delta, -delta}) {
    const auto r = scan_zeros(target, interval, {}, level).roots;
    cuts.insert(cuts.end(), r.begin(), r.end());
  }
  const auto crit = scan_zeros(TrigPolyTarget(p, 1), interval).roots;
  cuts.insert(cuts.end(), crit.begin(), crit.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto abs_slope = [&](double t) { return std::abs(target.value_slope(t).second); };
  const double piece_tol = 1e-6 * 2.0 * delta / static_cast<double>(cuts.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (!(b > a)) continue;
    if (std::abs(target.value_slope(0.5 * (a + b)).first) > delta) continue;
    total += integrate_adaptive(abs_slope, a, b, piece_tol, 0.0).value;
  }
  return total / (2.0 * delta);
}

std::uint64_t falling_factorial(std::uint64_t x, unsigned m) {
  std::uint64_t out = 1;
  for (unsigned k = 0; k < m; ++k) {
    if (x < k) return 0;
    if (__builtin_mul_overflow(out, x - k, &out)) {
      throw InvalidArgument("falling factorial overflows 64 bits");
    }
    if (out == 0) return 0;
  }
  return out;
}

TrigPoly derivative(const TrigPoly& p) {
  const int n_deg = p.degree();
  std::vector<double> a(n_deg), b(n_deg);
  for (int n = 1; n <= n_deg; ++n) {
    const double w = static_cast<double>(n) / n_deg;
    a[n - 1] = w * p.b()[n - 1];
    b[n - 1] = -w * p.a()[n - 1];
  }
  return TrigPoly(std::move(a), std::move(b));
}

}  // namespace trigzeros
