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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "trigzeros/coeffs.hpp"
#include "trigzeros/errors.hpp"
#include "trigzeros/rng.hpp"

using namespace trigzeros;
using trigzeros::testing::Moments;

TEST_CASE("philox known-answer vectors") {
  // Reference outputs of the Random123 Philox4x32-10 test suite.
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32_10(A4{0, 0, 0, 0}, A2{0, 0}) ==
        A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                      A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                      A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("make_stream determinism and independence") {
  RngStream a = make_stream(42, 0), b = make_stream(42, 0);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());

  CHECK(make_stream(42, 0)() != make_stream(43, 0)());

  RngStream x = make_stream(42, 0), y = make_stream(42, 1);
  trigzeros::testing::CovAccum c;
  for (int i = 0; i < 100000; ++i) c.add(x.uniform(), y.uniform());
  CHECK(std::abs(c.corr()) < 0.02);

  // Gaussian draws replay exactly too, including the cached second variate.
  RngStream g1 = make_stream(9, 3), g2 = make_stream(9, 3);
  for (int i = 0; i < 11; ++i) CHECK(g1.gaussian() == g2.gaussian());
  CHECK(g1.position() == g2.position());
}

TEST_CASE("uniform draws stay in range") {
  RngStream s = make_stream(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform(), v = s.uniform_pos();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK((v > 0.0 && v <= 1.0));
  }
}

TEST_CASE("sample_coeffs examples") {
  RngStream s = make_stream(5, 0);
  const auto r = sample_coeffs(CoeffDist::rademacher(), 3, s);
  REQUIRE(r.size() == 6);
  for (double v : r) CHECK((v == 1.0 || v == -1.0));

  Moments u;
  for (double v : sample_coeffs(CoeffDist::uniform_scaled(), 500000, s)) u.add(v);
  CHECK(u.var() >= 0.99);
  CHECK(u.var() <= 1.01);

  Moments g;
  for (double v : sample_coeffs(CoeffDist::gaussian(), 500000, s)) g.add(v);
  CHECK(std::abs(g.mean()) <= 0.004);

  CHECK_THROWS_AS(sample_coeffs(CoeffDist::gaussian(), 0, s), InvalidArgument);
}

TEST_CASE("conforming laws are centered with unit variance") {
  PsiFunction quartic{[](double x) { return x * x * x * x / 4.0 + x * x / 2.0; },
                      [](double x) { return x * x * x + x; }};
  const std::vector<CoeffDist> laws = {CoeffDist::rademacher(), CoeffDist::uniform_scaled(),
                                       CoeffDist::gaussian(), standardize_exp_psi(quartic)};
  for (const auto& law : laws) {
    CAPTURE(law.name());
    CHECK(law.conforming());
    RngStream s = make_stream(77, 1);
    Moments m;
    for (double v : sample_coeffs(law, 500000, s)) m.add(v);
    CHECK(std::abs(m.mean()) <= 4e-3);
    CHECK(std::abs(m.var() - 1.0) <= 1e-2);
  }
  CHECK_FALSE(CoeffDist::cauchy().conforming());
  CHECK(CoeffDist::cauchy().exploratory());
}

TEST_CASE("standardize") {
  const CoeffDist u = standardize(CoeffKind::UniformScaled, {{"lo", -1.0}, {"hi", 1.0}});
  CHECK(u.kind() == CoeffKind::UniformScaled);
  CHECK(u.params().at("half_width") == doctest::Approx(std::numbers::sqrt3).epsilon(1e-15));

  CHECK(standardize(CoeffKind::Rademacher, {}).name() == CoeffDist::rademacher().name());

  const CoeffDist g = standardize(CoeffKind::Gaussian, {{"mu", 0.0}, {"sigma", 2.0}});
  CHECK(g.params().at("mu") == 0.0);
  CHECK(g.params().at("sigma") == 1.0);

  CHECK_THROWS_AS(standardize(CoeffKind::Cauchy, {}), InvalidArgument);
  CHECK(standardize(CoeffKind::Cauchy, {{"scale", 1.0}}, true).kind() == CoeffKind::Cauchy);
}

TEST_CASE("parse_dist_spec grammar") {
  CHECK(parse_dist_spec("rademacher", false).kind() == CoeffKind::Rademacher);
  CHECK(parse_dist_spec("uniform", false).kind() == CoeffKind::UniformScaled);
  CHECK(parse_dist_spec("gaussian", false).kind() == CoeffKind::Gaussian);
  CHECK_THROWS_AS(parse_dist_spec("cauchy", false), InvalidArgument);
  CHECK(parse_dist_spec("cauchy", true).kind() == CoeffKind::Cauchy);
  CHECK_THROWS_AS(parse_dist_spec("poisson", true), InvalidArgument);
  CHECK_THROWS_AS(parse_dist_spec("exppsi:/nonexistent/psi.txt", false), InvalidArgument);
}

TEST_CASE("exppsi from a tabulated file matches the Gaussian law") {
  const auto path = std::filesystem::temp_directory_path() / "trigzeros_psi_gauss.txt";
  {
    std::ofstream out(path);
    out << "# x psi\n";
    for (int i = -4000; i <= 4000; ++i) {
      const double x = i * 0.004;
      out << x << ", " << 0.5 * x * x << "\n";
    }
  }
  const CoeffDist d = parse_dist_spec("exppsi:" + path.string(), false);
  CHECK(d.kind() == CoeffKind::ExpPsi);
  CHECK(d.conforming());
  RngStream s = make_stream(3, 3);
  Moments m, m4;
  for (int i = 0; i < 200000; ++i) {
    const double x = d.sample(s);
    m.add(x);
    m4.add(x * x * x * x);
  }
  CHECK(std::abs(m.mean()) < 0.01);
  CHECK(std::abs(m.var() - 1.0) < 0.015);
  CHECK(std::abs(m4.mean() - 3.0) < 0.1);  // Gaussian kurtosis
  std::filesystem::remove(path);
}

TEST_CASE("exppsi with a non-finite potential fails with a diagnostic") {
  PsiFunction bad{[](double x) {
    return x > 1.0 ? std::numeric_limits<double>::quiet_NaN() : x * x / 2.0;
  }};
  bool threw = false;
  try {
    const CoeffDist d = standardize_exp_psi(bad);
    RngStream s = make_stream(1, 0);
    (void)sample_coeffs(d, 4, s);
  } catch (const SamplingError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("psi") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("cauchy draws are heavy tailed and finite") {
  RngStream s = make_stream(8, 0);
  const CoeffDist c = CoeffDist::cauchy();
  int big = 0;
  for (int i = 0; i < 100000; ++i) {
    const double v = c.sample(s);
    REQUIRE(std::isfinite(v));
    if (std::abs(v) > 100.0) ++big;
  }
  // P(|C| > 100) = 2 atan(1/100) / pi ~ 6.366e-3.
  CHECK(std::abs(big / 1e5 - 6.366e-3) < 4 * std::sqrt(6.366e-3 / 1e5));
}
