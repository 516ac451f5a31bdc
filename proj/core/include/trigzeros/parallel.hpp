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

namespace trigzeros {

// Runs body(i) for i in [0, n) on `workers` threads (0: hardware
// concurrency). Work items are claimed dynamically; callers write results by
// index, so output never depends on scheduling. If bodies throw, the
// exception from the smallest index is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

unsigned resolve_workers(unsigned requested) noexcept;

}  // namespace trigzeros
