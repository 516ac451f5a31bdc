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

#include <array>
#include <cstdint>
#include <limits>

namespace trigzeros {

// Philox4x32-10 block function. Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

// Counter-based random stream keyed by (seed, stream_id).
//
// The seed is the Philox key; the stream id occupies the upper half of the
// 128-bit counter and the draw index the lower half. Deriving a stream is
// therefore pure arithmetic, and a stream's output does not depend on how many
// other streams exist or in which order they are consumed. All arithmetic is
// fixed-width integer, so the raw 64-bit sequence is identical on every
// platform.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept;

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  // Uniform on (0, 1].
  double uniform_pos() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double gaussian() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  // Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return 2 * block_ - (buffered_ ? 1 : 0); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t buffer_ = 0;
  bool buffered_ = false;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

inline RngStream make_stream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
  return RngStream(seed, stream_id);
}

}  // namespace trigzeros
