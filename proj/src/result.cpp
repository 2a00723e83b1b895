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

#include "qca/result.hpp"

#include <algorithm>
#include <cmath>

namespace qca {

namespace {

int rank(const Value& v) {
  if (is_null(v)) return 0;
  if (std::holds_alternative<std::string>(v)) return 2;
  return 1;
}

double as_double(const Value& v) {
  if (const auto* i = std::get_if<int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

bool close_enough(const Value& a, const Value& b, double rel_tol) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) {
    double y = std::get<double>(b);
    if (*x == y) return true;
    return std::fabs(*x - y) <= rel_tol * std::max(std::fabs(*x), std::fabs(y));
  }
  return a == b;
}

}  // namespace

int compare_values(const Value& a, const Value& b) {
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  if (ra == 0) return 0;
  if (ra == 2) {
    const auto& x = std::get<std::string>(a);
    const auto& y = std::get<std::string>(b);
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  if (std::holds_alternative<int64_t>(a) && std::holds_alternative<int64_t>(b)) {
    auto x = std::get<int64_t>(a), y = std::get<int64_t>(b);
    return x < y ? -1 : (y < x ? 1 : 0);
  }
  double x = as_double(a), y = as_double(b);
  return x < y ? -1 : (y < x ? 1 : 0);
}

std::vector<Row> sorted_rows(std::vector<Row> rows) {
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i)
      if (int c = compare_values(a[i], b[i])) return c < 0;
    return a.size() < b.size();
  });
  return rows;
}

bool same_multiset(const std::vector<Row>& a, const std::vector<Row>& b, double rel_tol) {
  if (a.size() != b.size()) return false;
  auto x = sorted_rows(a), y = sorted_rows(b);
  for (size_t r = 0; r < x.size(); ++r) {
    if (x[r].size() != y[r].size()) return false;
    for (size_t c = 0; c < x[r].size(); ++c)
      if (!close_enough(x[r][c], y[r][c], rel_tol)) return false;
  }
  return true;
}

std::string format_row(const Row& row) {
  std::string out = "(";
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += format_value(row[i]);
  }
  return out + ")";
}

}  // namespace qca
