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

#include <cstdint>
#include <string>
#include <vector>

#include "qca/csv.hpp"
#include "qca/schema.hpp"
#include "qca/value.hpp"

namespace qca::detail {

/// Checks a fragment's header against its spec and table. Returns the
/// table definition restricted to the file's columns, in file order.
TableDef fragment_table(CsvSpec& spec, const TableDef& table);

struct ScanOutput {
  size_t rows = 0;
  std::vector<Column> columns;  // parallel to the requested positions
  uint64_t bytes = 0;
};

/// One pass over the file parsing the fields at `positions` of each row.
ScanOutput scan_columns(const CsvSpec& spec, const TableDef& file_table, const std::vector<size_t>& positions);

}  // namespace qca::detail
