// Copyright 2026 The ubench Authors.
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

#ifndef UBENCH_CSV_H_
#define UBENCH_CSV_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ubench {

struct CsvRow {
  std::size_t line = 0;  // 1-based source line
  std::vector<std::string> cells;
};

// Header plus data rows. Quoted fields and CRLF line ends are accepted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  // Index of `name` in the header, or throws naming `context`.
  std::size_t Column(std::string_view name, std::string_view context) const;
};

// `context` prefixes error messages (usually the file name).
CsvTable ParseCsv(std::string_view text, std::string_view context);

std::string CsvEscape(std::string_view field);
std::string CsvLine(const std::vector<std::string>& fields);

// Shortest text that parses back to exactly `value`.
std::string FormatDouble(double value);
// Fixed number of decimals, half away from zero after snapping to 1e-9.
std::string FormatFixed(double value, int decimals);

double ParseDouble(std::string_view text, std::string_view context);
long long ParseInt(std::string_view text, std::string_view context);

}  // namespace ubench

#endif  // UBENCH_CSV_H_
