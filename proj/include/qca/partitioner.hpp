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

// Query-complexity-aware vertical partitioning.
//
// Queries touching one table instance are simple (type 0) and belong on the
// raw side; queries with two or more instances, self-joins included, are
// complex (type 1) and belong on the loaded side. The attribute unions of the
// two groups form QT_P0 and QT_P1, their intersection is the common
// attribute partition (CAP), and a query is partially covered by a partition
// when it reads at least one attribute outside it.

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qca/ingest.hpp"
#include "qca/schema.hpp"

namespace qca {

/// query id -> 0 (simple) or 1 (complex).
using QueryTypeMap = std::map<std::string, int>;

/// Classifies each query task by its table-instance count.
/// Throws MissingCatalogEntry for a query task without a catalog entry.
QueryTypeMap qci(const WorkloadList& workload, const QueryCatalog& queries);

/// Attribute unions of type-0 and type-1 queries.
std::pair<AttrSet, AttrSet> gra(const QueryCatalog& queries, const QueryTypeMap& types);

AttrSet compute_cap(const AttrSet& qt_p0, const AttrSet& qt_p1);

/// 1 for every query with an attribute outside `partition`, else 0. Every
/// query task of the workload gets an entry.
QueryTypeMap pcq(const QueryCatalog& queries, const AttrSet& partition, const WorkloadList& workload);

/// One pass of grouping / CAP / partial-coverage for a type assignment.
struct SubPlan {
  std::string origin;  // "qci", or the parent origin plus "/qt2" or "/qt3"
  QueryTypeMap types;
  AttrSet qt_p0;
  AttrSet qt_p1;
  AttrSet cap;
  QueryTypeMap qt2;  // pcq against qt_p0 - cap
  QueryTypeMap qt3;  // pcq against qt_p1 - cap

  bool operator==(const SubPlan&) const = default;
};

struct PartitionPlan {
  QueryTypeMap query_types;  // QCI result
  AttrSet qt_p0;
  AttrSet qt_p1;
  AttrSet cap;
  std::set<std::string> pc_q0;  // simple queries partially covered by qt_p0 - cap
  std::set<std::string> pc_q1;  // complex queries partially covered by qt_p1 - cap
  std::vector<std::vector<SubPlan>> rounds;
  bool fully_covered = false;  // every query fits some round's partition minus its CAP

  bool operator==(const PartitionPlan&) const = default;
};

/// The catalog with primary-key attributes removed from every query; keys
/// are placed in every fragment and never take part in grouping.
QueryCatalog strip_keys(const QueryCatalog& queries, const SchemaCatalog& schema);

/// Runs the first round and up to `max_rounds - 1` refinement rounds. Each
/// refinement round treats every PCQ map of the previous round as a new type
/// assignment; identical assignments are expanded once. Stops early once
/// every query is fully covered.
PartitionPlan partition(const WorkloadList& workload, const QueryCatalog& queries, const SchemaCatalog& schema,
                        int max_rounds = 1);

/// Multi-line human-readable report: the type table, then per round the
/// partition sizes and members.
std::string describe_plan(const PartitionPlan& plan);

}  // namespace qca
