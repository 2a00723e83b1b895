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

// Seeded synthetic tables shaped like a wide sky-survey view, and workloads
// with a prescribed simple/complex query pattern.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qca/csv.hpp"
#include "qca/layout.hpp"
#include "qca/schema.hpp"

namespace qca {

struct TableProfile {
  std::string table = "PhotoPrimary";
  std::string key = "objID";
  size_t columns = 100;  // including the key
  uint64_t rows = 100000;
  size_t int_columns = 0;   // non-key integer columns, placed after ra/dec
  size_t text_columns = 0;  // placed last
  size_t text_width = 8;
  double null_fraction = 0.0;  // chance that a non-key cell is empty
  uint64_t seed = 42;
  char delimiter = ';';
};

struct GeneratedTable {
  SchemaCatalog schema;
  std::string ddl;
  CsvSpec csv;
};

/// Column definitions for `profile`: the integer key, ra and dec, then
/// numbered float/int/text columns. Throws InvalidArgument for fewer than
/// two columns.
TableDef generated_table_def(const TableProfile& profile);

/// Writes `<dir>/<table>.csv` and `<dir>/schema.sql`. The key runs 0..rows-1;
/// identical profiles give byte-identical files. Throws IoFailure.
GeneratedTable gen_table(const TableProfile& profile, const std::string& dir);

/// Value range a generated numeric column is drawn from, [lo, hi).
struct ValueRange {
  double lo = 0;
  double hi = 1000;
};
ValueRange generated_range(const AttributeDef& attribute, uint64_t rows);

struct PatternEntry {
  std::string id;
  int type = 0;           // 0 simple, 1 complex
  size_t attributes = 0;  // distinct non-key attributes the query reads

  bool operator==(const PatternEntry&) const = default;
};

/// Twelve queries Q1..Q12: complex at 1, 3, 5, 8, 9, 11, 12, simple elsewhere.
std::vector<PatternEntry> sky_pattern(size_t simple_attributes = 7, size_t complex_attributes = 6);

struct WorkloadProfile {
  std::vector<PatternEntry> pattern;
  std::string table;  // defaults to the schema's first table
  // Non-key attribute pools: read only by simple queries, only by complex
  // queries, and by both (the CAP). A pool whose query type is absent is
  // dropped, and so is the CAP.
  size_t simple_pool = 20;
  size_t complex_pool = 24;
  size_t cap_pool = 10;
  size_t cap_per_query = 2;  // minimum CAP attributes per query
  uint64_t seed = 7;
  bool include_load = true;  // TRUN and COPY tasks first
  std::string load_path = "PhotoPrimary.csv";
};

struct GeneratedWorkload {
  std::string text;  // workload file contents
  AttrSet simple_only, complex_only, cap;
};

/// Throws InfeasiblePattern when the pools cannot be covered with the
/// requested attribute counts, or a count exceeds the available attributes.
GeneratedWorkload gen_workload(const SchemaCatalog& schema, const WorkloadProfile& profile);

}  // namespace qca
