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

#include <stdexcept>
#include <string>

namespace trigzeros {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Coefficient vector is identically zero, so the zero set is not discrete.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// An iterative method did not reach its tolerance.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Cholesky factorization met a pivot below threshold.
class NearSingular : public Error {
 public:
  NearSingular(const std::string& what, double pivot, int index)
      : Error(what), pivot_(pivot), index_(index) {}
  double pivot() const noexcept { return pivot_; }
  int index() const noexcept { return index_; }

 private:
  double pivot_;
  int index_;
};

// A coefficient law could not produce samples (e.g. Psi evaluated to NaN).
class SamplingError : public Error {
 public:
  using Error::Error;
};

// Rejection sampler for the epsilon-excluded domain accepted too few points.
class EpsilonTooLarge : public Error {
 public:
  EpsilonTooLarge(const std::string& what, double acceptance_rate)
      : Error(what), acceptance_rate_(acceptance_rate) {}
  double acceptance_rate() const noexcept { return acceptance_rate_; }

 private:
  double acceptance_rate_;
};

}  // namespace trigzeros
