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
#include <span>
#include <vector>

namespace trigzeros {

struct AberthOptions {
  // Target backward error |p(z)| / sum |c_k| |z|^k. Raised automatically to
  // 4 * degree * machine epsilon when that is larger.
  double residual_tol = 1e-13;
  int max_sweeps = 500;
};

struct AberthResult {
  std::vector<std::complex<double>> roots;
  int sweeps = 0;
  double max_residual = 0.0;  // worst relative backward error at exit
};

// All roots of sum_k coeffs[k] z^k by Aberth-Ehrlich simultaneous iteration.
// Leading coefficient must be non-zero. Throws NumericalFailure if some root
// has not converged after max_sweeps sweeps.
AberthResult aberth_roots(std::span<const std::complex<double>> coeffs,
                          const AberthOptions& opts = {});

}  // namespace trigzeros
