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

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qca/engines.hpp"
#include "qca/exec.hpp"
#include "qca/layout.hpp"
#include "qca/query.hpp"
#include "qca/result.hpp"

namespace qca {

/// The engines of one node. Raw connections are keyed by fragment name and
/// are used by one thread at a time.
struct EngineSet {
  const SchemaCatalog* schema = nullptr;
  std::map<std::string, RawConnection*> raw;
  LoadedStore* loaded = nullptr;
};

struct QueryStats {
  std::string query_id;
  std::chrono::nanoseconds qet{0};
  uint64_t rows_out = 0;
  uint64_t raw_bytes_read = 0;       // file bytes read by raw connections
  uint64_t loaded_bytes_accessed = 0;  // in-memory bytes of loaded columns read
  uint64_t cross_format_joins = 0;   // fragment-to-fragment key joins
  bool used_raw = false;
  bool used_loaded = false;
  uint64_t raw_connection = 0;  // id of the first raw connection used, 0 if none
};

struct QueryOutcome {
  ResultSet result;
  QueryStats stats;
};

/// Runs query `id` as routed by `layout`. Single-fragment queries go to the
/// owning engine; otherwise each table instance is rebuilt by joining its
/// fragments on the primary key (pushing down predicates that touch one
/// fragment) before the query is evaluated. Throws CaseNotExecutable for
/// cases III and IV, RoutingError for unrouted queries or missing engines.
QueryOutcome run_query(const std::string& id, const QueryAst& ast, const PartitionLayout& layout, EngineSet& engines,
                       const EvalOptions& options = {});

}  // namespace qca
