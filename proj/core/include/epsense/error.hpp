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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace epsense {

enum class ErrorKind {
  NegativeRate,
  NonFinite,
  InvalidArgument,
  AtExceptionalPoint,
  NegativeTime,
  VanishedNorm,
  StepTooLarge,
  NoSurvivors,
  InsufficientSurvivors,
  NotConverged,
  DegenerateData,
  InsufficientPoints,
  NonPositiveS,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every failure raised by the library. `kind()`
/// identifies the failure; `index()` is set when the failure refers to a
/// specific input element (e.g. the offending point of a power-law fit).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace epsense
