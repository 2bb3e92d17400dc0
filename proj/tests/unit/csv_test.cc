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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "test_support.h"
#include "ubench/csv.h"
#include "ubench/error.h"

namespace ubench {
namespace {

TEST_SUITE("csv") {

TEST_CASE("quoted fields, CRLF and blank lines") {
  CsvTable t = ParseCsv("a,b\r\n\"x,1\",\"say \"\"hi\"\"\"\r\n\r\n2,3\n", "t.csv");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  CHECK(t.rows[0].cells[0] == "x,1");
  CHECK(t.rows[0].cells[1] == "say \"hi\"");
  CHECK(t.rows[1].line == 4);
  CHECK(t.Column("b", "t.csv") == 1);
  CHECK_THROWS_AS(t.Column("c", "t.csv"), Error);
}

TEST_CASE("field count mismatch names the line") {
  try {
    ParseCsv("a,b\n1,2\n3\n", "t.csv");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("t.csv") != std::string::npos);
    CHECK(std::string(e.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("escape round-trips through the parser") {
  std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"",
                                     "line\nbreak", ""};
  std::string text = CsvLine({"a", "b", "c", "d", "e"}) + CsvLine(fields);
  CsvTable t = ParseCsv(text, "t");
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].cells == fields);
}

TEST_CASE("FormatDouble is the shortest exact text") {
  CHECK(FormatDouble(0.1) == "0.1");
  CHECK(FormatDouble(-0.0) == "0");
  CHECK(FormatDouble(2) == "2");
  testing::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    double v = std::ldexp(rng.Uniform(-1, 1), rng.Int(-30, 30));
    CHECK(ParseDouble(FormatDouble(v), "v") == v);
  }
}

TEST_CASE("FormatFixed rounds half away from zero") {
  CHECK(FormatFixed(78.3075, 2) == "78.31");
  CHECK(FormatFixed(100 * 0.783075, 2) == "78.31");
  CHECK(FormatFixed(-1.005, 2) == "-1.01");
  CHECK(FormatFixed(0.125, 2) == "0.13");
  CHECK(FormatFixed(61.4449, 2) == "61.44");
  CHECK(FormatFixed(3, 0) == "3");
  CHECK(FormatFixed(0.5, 0) == "1");
  CHECK(FormatFixed(0.04, 1) == "0.0");
}

TEST_CASE("number parsing rejects junk") {
  CHECK(ParseDouble("1e-3", "x") == doctest::Approx(0.001));
  CHECK_THROWS_AS(ParseDouble("", "x"), Error);
  CHECK_THROWS_AS(ParseDouble("1.2.3", "x"), Error);
  CHECK_THROWS_AS(ParseDouble("nan", "x"), Error);
  CHECK(ParseInt("-42", "x") == -42);
  CHECK_THROWS_AS(ParseInt("4.2", "x"), Error);
}

}

}  // namespace
}  // namespace ubench
