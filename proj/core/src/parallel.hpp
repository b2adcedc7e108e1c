// Copyright 2026 The epsense Authors
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

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace epsense::detail {

inline unsigned resolve_workers(unsigned requested, std::size_t n_items) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (n_items < w) w = static_cast<unsigned>(std::max<std::size_t>(1, n_items));
  return w;
}

/// Calls body(worker, begin, end) on contiguous blocks of [0, n). The block
/// boundaries depend on the worker count, so callers must merge per-worker
/// results in an order-insensitive way.
template <class Body>
void parallel_blocks(std::size_t n, unsigned workers, Body&& body) {
  if (workers <= 1 || n < 2) {
    body(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    threads.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
}

}  // namespace epsense::detail
