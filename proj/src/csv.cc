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

#include "ubench/csv.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ubench/error.h"

namespace ubench {

std::size_t CsvTable::Column(std::string_view name,
                             std::string_view context) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(std::string(context) + ": missing column '" + std::string(name) +
              "'");
}

CsvTable ParseCsv(std::string_view text, std::string_view context) {
  CsvTable table;
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_field = [&]() {
    row.cells.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&]() {
    end_field();
    bool blank = row.cells.size() == 1 && row.cells[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row = CsvRow();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // Tolerate CRLF.
    } else if (c == '\n') {
      end_row();
      ++line;
      row.line = line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(std::string(context) + ":" + std::to_string(line) +
                ": unterminated quoted field");
  }
  if (field_started || !row.cells.empty()) end_row();

  if (rows.empty()) {
    throw Error(std::string(context) + ": empty file, expected a header");
  }
  table.header = std::move(rows.front().cells);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].cells.size() != table.header.size()) {
      throw Error(std::string(context) + ":" + std::to_string(rows[i].line) +
                  ": expected " + std::to_string(table.header.size()) +
                  " fields, got " + std::to_string(rows[i].cells.size()));
    }
    table.rows.push_back(std::move(rows[i]));
  }
  return table;
}

std::string CsvEscape(std::string_view field) {
  bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string CsvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += CsvEscape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

std::string FormatDouble(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string FormatFixed(double value, int decimals) {
  if (!std::isfinite(value)) return FormatDouble(value);
  // Work in integer nano-units so 78.3075 rounds to 78.31, not 78.30.
  long long nano = std::llround(value * 1e9);
  long long divisor = 1;
  for (int i = 0; i < 9 - decimals; ++i) divisor *= 10;
  long long q = nano / divisor;
  long long r = nano % divisor;
  if (2 * (r < 0 ? -r : r) >= divisor) q += (nano < 0 ? -1 : 1);
  bool negative = q < 0;
  unsigned long long mag = negative ? -static_cast<unsigned long long>(q) : q;
  unsigned long long unit = 1;
  for (int i = 0; i < decimals; ++i) unit *= 10;
  std::string out = negative ? "-" : "";
  out += std::to_string(mag / unit);
  if (decimals > 0) {
    std::string frac = std::to_string(mag % unit);
    out += "." + std::string(decimals - frac.size(), '0') + frac;
  }
  return out;
}

double ParseDouble(std::string_view text, std::string_view context) {
  std::string s(text);
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size() || !std::isfinite(v)) {
    throw Error(std::string(context) + ": not a number: '" + s + "'");
  }
  return v;
}

long long ParseInt(std::string_view text, std::string_view context) {
  long long v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() ||
      res.ptr != text.data() + text.size()) {
    throw Error(std::string(context) + ": not an integer: '" +
                std::string(text) + "'");
  }
  return v;
}

}  // namespace ubench
