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

#pragma once

#include <string>
#include <vector>

#include "qca/value.hpp"

namespace qca {

using Row = std::vector<Value>;

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<Row> rows;

  size_t size() const noexcept { return rows.size(); }
};

/// Total order on values: NULL < numbers < text; ints and floats compare
/// numerically.
int compare_values(const Value& a, const Value& b);

/// Rows sorted with compare_values, column by column.
std::vector<Row> sorted_rows(std::vector<Row> rows);

/// Multiset equality. Floats match when within `rel_tol` relative error,
/// which absorbs summation-order differences in AVG.
bool same_multiset(const std::vector<Row>& a, const std::vector<Row>& b, double rel_tol = 1e-9);

std::string format_row(const Row& row);

}  // namespace qca
