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

#include <cstdint>

namespace epsense {

/// splitmix64 finalizer: a bijective avalanche mix of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of the i-th independent stream derived from a master seed.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return master ^ mix64(index + 0x9e3779b97f4a7c15ULL);
}

/// Counter-based generator: output n is mix64(key + n * golden). Any draw can
/// be recomputed from (key, n) alone, so streams never depend on scheduling.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in the open interval (0, 1).
  constexpr double next_open01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace epsense
