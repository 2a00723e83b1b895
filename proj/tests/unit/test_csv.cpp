// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "qca/csv.hpp"
#include "qca/error.hpp"
#include "qca/result.hpp"
#include "qca/value.hpp"
#include "support/rng.hpp"

using namespace qca;
using namespace qca::testing;

namespace {

std::vector<std::vector<std::string>> read_all(const std::string& path, char delim = ';', bool header = true) {
  CsvReader r(path, delim, header);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string_view> f;
  while (r.next(f)) rows.emplace_back(f.begin(), f.end());
  return rows;
}

// Reference split used to check the reader.
std::vector<std::vector<std::string>> naive(const std::string& text, char delim) {
  std::vector<std::vector<std::string>> rows;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(start, nl - start);
    start = nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    size_t s = 0;
    for (;;) {
      size_t d = line.find(delim, s);
      f.push_back(line.substr(s, d == std::string::npos ? std::string::npos : d - s));
      if (d == std::string::npos) break;
      s = d + 1;
    }
    rows.push_back(f);
  }
  return rows;
}

}  // namespace

TEST(CsvReader, HeaderAndRows) {
  TempDir d;
  spit(d.file("a.csv"), "id;x;y\n1;2.5;abc\n2;;z\n");
  CsvReader r(d.file("a.csv"), ';');
  EXPECT_EQ(r.header(), (std::vector<std::string>{"id", "x", "y"}));
  std::vector<std::string_view> f;
  ASSERT_TRUE(r.next(f));
  EXPECT_EQ(r.row_number(), 1u);
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f[2], "abc");
  ASSERT_TRUE(r.next(f));
  EXPECT_EQ(f[1], "");
  EXPECT_FALSE(r.next(f));
  EXPECT_EQ(r.bytes_read(), 22u);
}

TEST(CsvReader, CrLfBlankLinesAndMissingNewline) {
  TempDir d;
  spit(d.file("a.csv"), "h1,h2\r\n\r\n1,2\r\n\n3,4");
  auto rows = read_all(d.file("a.csv"), ',');
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"3", "4"}));
}

TEST(CsvReader, EmptyFileAndHeaderOnly) {
  TempDir d;
  spit(d.file("e.csv"), "");
  CsvReader e(d.file("e.csv"), ';');
  EXPECT_TRUE(e.header().empty());
  std::vector<std::string_view> f;
  EXPECT_FALSE(e.next(f));
  spit(d.file("h.csv"), "a;b\n");
  EXPECT_TRUE(read_all(d.file("h.csv")).empty());
  EXPECT_EQ(read_csv_header(d.file("h.csv"), ';'), (std::vector<std::string>{"a", "b"}));
}

TEST(CsvReader, MissingFileIsIoFailure) {
  try {
    CsvReader r("/nonexistent/dir/file.csv", ';');
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoFailure);
  }
}

TEST(CsvReader, LineLongerThanTheReadChunk) {
  TempDir d;
  std::string big(9u << 20, 'x');
  spit(d.file("big.csv"), "a;b\n" + big + ";1\nshort;2\n");
  auto rows = read_all(d.file("big.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0].size(), big.size());
  EXPECT_EQ(rows[0][1], "1");
  EXPECT_EQ(rows[1][0], "short");
}

// Property: over random texts crossing chunk boundaries the reader matches a
// plain string split.
TEST(CsvReader, MatchesNaiveSplit) {
  Rng rng(77);
  TempDir d;
  for (int iter = 0; iter < 12; ++iter) {
    const char delim = iter % 2 ? ',' : ';';
    std::string text;
    const size_t rows = static_cast<size_t>(rng.range(0, iter < 3 ? 200000 : 300));
    for (size_t r = 0; r < rows; ++r) {
      const int fields = static_cast<int>(rng.range(1, 6));
      for (int c = 0; c < fields; ++c) {
        if (c) text.push_back(delim);
        const int len = static_cast<int>(rng.range(0, 12));
        for (int k = 0; k < len; ++k) text.push_back(static_cast<char>('a' + rng.range(0, 25)));
      }
      if (rng.chance(0.05)) text.push_back('\r');
      text.push_back('\n');
      if (rng.chance(0.02)) text.push_back('\n');
    }
    spit(d.file("p.csv"), text);
    EXPECT_EQ(read_all(d.file("p.csv"), delim, false), naive(text, delim)) << "iteration " << iter;
  }
}

TEST(CsvWriter, RoundTrip) {
  TempDir d;
  {
    CsvWriter w(d.file("w.csv"), '|');
    w.write_row(std::vector<std::string>{"a", "b"});
    w.write_row(std::vector<std::string_view>{"1", ""});
    w.write_line("x|y");
    w.close();
  }
  EXPECT_EQ(slurp(d.file("w.csv")), "a|b\n1|\nx|y\n");
}

TEST(CsvWriter, UnwritablePath) {
  try {
    CsvWriter w("/nonexistent/dir/out.csv", ';');
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoFailure);
  }
}

TEST(Values, FieldParsing) {
  EXPECT_TRUE(is_null(*parse_field("", TypeTag::Int)));
  EXPECT_EQ(std::get<int64_t>(*parse_field("-42", TypeTag::Int)), -42);
  EXPECT_FALSE(parse_field("4.2", TypeTag::Int));
  EXPECT_FALSE(parse_field("12abc", TypeTag::Int));
  EXPECT_DOUBLE_EQ(std::get<double>(*parse_field("4.25", TypeTag::Float)), 4.25);
  EXPECT_DOUBLE_EQ(std::get<double>(*parse_field("7", TypeTag::Float)), 7.0);
  EXPECT_DOUBLE_EQ(std::get<double>(*parse_field("1e3", TypeTag::Float)), 1000.0);
  EXPECT_FALSE(parse_field("x", TypeTag::Float));
  EXPECT_EQ(std::get<std::string>(*parse_field("hello", TypeTag::Text)), "hello");
}

TEST(Values, ColumnBasics) {
  Column c(TypeTag::Float);
  EXPECT_TRUE(c.append_field("1.5"));
  EXPECT_TRUE(c.append_field(""));
  EXPECT_FALSE(c.append_field("nope"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.has_nulls());
  EXPECT_FALSE(c.is_valid(1));
  auto g = c.gather({1, 0});
  EXPECT_TRUE(is_null(g.get(0)));
  EXPECT_DOUBLE_EQ(std::get<double>(g.get(1)), 1.5);
}

TEST(Results, MultisetComparison) {
  std::vector<Row> a{{Value{int64_t{1}}, Value{2.0}}, {Value{}, Value{std::string("x")}}};
  std::vector<Row> b{{Value{}, Value{std::string("x")}}, {Value{int64_t{1}}, Value{2.0 + 1e-12}}};
  EXPECT_TRUE(same_multiset(a, b));
  b[1][1] = Value{2.1};
  EXPECT_FALSE(same_multiset(a, b));
  EXPECT_LT(compare_values(Value{}, Value{int64_t{0}}), 0);
  EXPECT_LT(compare_values(Value{int64_t{5}}, Value{std::string("a")}), 0);
  EXPECT_EQ(compare_values(Value{int64_t{2}}, Value{2.0}), 0);
}
