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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qca/query.hpp"
#include "qca/schema.hpp"

namespace qca {

/// Parses CREATE TABLE statements separated by ';'. Column types map onto
/// int/float/text; PRIMARY KEY may be a column suffix or a table constraint.
SchemaCatalog extract_schema(std::string_view ddl_text);

enum class TaskKind { Query, Load, Truncate };

std::string_view task_kind_name(TaskKind k) noexcept;

struct Task {
  std::string id;
  std::string statement;
  TaskKind kind = TaskKind::Query;
  std::string target_table;  // load/truncate target; empty for queries

  bool operator==(const Task&) const = default;
};

struct WorkloadList {
  std::vector<Task> tasks;  // file order

  const Task* find(std::string_view id) const;
  size_t query_count() const;
  bool operator==(const WorkloadList&) const = default;
};

struct QueryInfo {
  QueryAst ast;
  std::vector<TableInstance> tables;
  AttrSet attributes;

  bool operator==(const QueryInfo&) const = default;
};

/// query id -> QueryInfo; one entry per query task.
using QueryCatalog = std::map<std::string, QueryInfo>;

/// Reads `task_id<TAB>statement` lines ('#' comments and blank lines are
/// skipped). Parser errors are rethrown with the task id attached.
std::pair<WorkloadList, QueryCatalog> extract_workload(std::string_view workload_text, const SchemaCatalog& schema);

/// Union of every query's attributes.
AttrSet workload_attributes(const QueryCatalog& queries);

}  // namespace qca
