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
#include <ostream>
#include <string>
#include <vector>

namespace epsense::cli {

/// Number formatting shared by every CSV writer: 12 significant digits.
std::string format_number(double v);

/// RFC 4180 writer: comma separated, CRLF-free, fields quoted only when they
/// contain a comma, quote or newline.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  /// Empty optionals become empty fields.
  void row(const std::vector<std::optional<double>>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

std::string csv_escape(const std::string& field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column by name; throws ConfigError if absent.
  std::size_t column(const std::string& name) const;
};

/// Parses RFC 4180 text. Throws ConfigError on unterminated quotes, ragged
/// rows or a missing header.
CsvTable parse_csv(const std::string& text);

}  // namespace epsense::cli
