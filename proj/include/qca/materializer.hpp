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

// Vertical split of a source CSV into one file per layout fragment.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qca/csv.hpp"
#include "qca/layout.hpp"
#include "qca/schema.hpp"

namespace qca {

/// fragment name -> file holding it. Replicas share one file.
using FragmentFiles = std::map<std::string, CsvSpec>;

/// Writes `<out_dir>/<fragment.file>.csv` for every fragment of `table`
/// (empty: the only table the layout covers). Keys lead, the rest follow in
/// schema order, and source row order is kept. The source header must list
/// the table's attributes in schema order.
/// Throws HeaderMismatch, RowArityMismatch (with the row number), IoFailure,
/// UnknownTable, or InvalidArgument when `table` is ambiguous.
FragmentFiles split(const CsvSpec& source, const PartitionLayout& layout, const SchemaCatalog& schema,
                    const std::string& out_dir, const std::string& table = "");

struct SplitMismatch {
  std::string fragment;
  std::string key;        // key fields joined by ','
  std::string attribute;  // empty when the whole row is unusable
  std::string expected;
  std::string actual;
};

struct SplitReport {
  uint64_t source_rows = 0;
  uint64_t cells_checked = 0;
  uint64_t mismatched_rows = 0;  // fragment rows with at least one bad cell
  std::vector<SplitMismatch> mismatches;  // first kMaxListed only
  std::vector<SplitMismatch> missing;     // source keys absent from a fragment
  std::vector<SplitMismatch> extra;       // fragment keys absent from the source, or repeated

  static constexpr size_t kMaxListed = 100;
  uint64_t missing_count = 0;
  uint64_t extra_count = 0;

  bool ok() const noexcept { return mismatched_rows == 0 && missing_count == 0 && extra_count == 0; }
};

/// Joins each fragment back to the source by key and compares every cell
/// byte for byte. Problems are report content; only an unreadable source
/// throws (IoFailure / HeaderMismatch).
SplitReport verify_split(const CsvSpec& source, const TableDef& table, const FragmentFiles& fragments);

std::string describe_split_report(const SplitReport& report);

}  // namespace qca
