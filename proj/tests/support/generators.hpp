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

// Hand-rolled random inputs: tables with their cells kept as text, dialect
// queries over them, and workloads whose attribute sets are known up front.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qca/query.hpp"
#include "qca/schema.hpp"
#include "support/rng.hpp"

namespace qca::testing {

struct TestTable {
  TableDef def;
  std::vector<std::vector<std::string>> cells;  // [row][column], "" is NULL

  std::string csv_text(char delimiter = ';') const;
  void write_csv(const std::string& path, char delimiter = ';') const;
};

struct TableShape {
  size_t rows = 50;
  size_t columns = 6;  // non-key
  double null_prob = 0.1;
  bool text_key = false;
  bool composite_key = false;  // adds a second int key column
};

TestTable random_table(Rng& rng, const std::string& name, const TableShape& shape);

/// CREATE TABLE text written without the library.
std::string ddl_for(const std::vector<const TableDef*>& tables);

struct QueryShape {
  int max_instances = 3;
  double cross_prob = 0.05;  // an instance with no join condition
  double aggregate_prob = 0.3;
  double limit_prob = 0.3;
  int max_predicates = 3;
};

/// A valid query over `tables`; predicate literals are often drawn from
/// the data so selections are neither empty nor total.
QueryAst random_query(Rng& rng, const std::vector<const TestTable*>& tables, const QueryShape& shape = {});

/// A workload whose per-query instance counts and attribute sets are
/// recorded independently of the parser.
struct KnownQuery {
  int instances = 1;
  AttrSet attributes;  // every referenced attribute, keys included
};

struct KnownWorkload {
  std::vector<TableDef> tables;
  std::string ddl;
  std::string text;  // workload file
  std::map<std::string, KnownQuery> truth;
  std::vector<std::string> order;  // query ids in file order
};

struct WorkloadShape {
  int tables = 2;
  int min_columns = 3;
  int max_columns = 12;
  int queries = 12;
  double complex_prob = 0.5;
  bool with_load = true;
  bool gapped_ids = true;  // skip some ids
};

KnownWorkload random_workload(Rng& rng, const WorkloadShape& shape = {});

}  // namespace qca::testing
