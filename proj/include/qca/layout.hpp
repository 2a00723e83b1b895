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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qca/ingest.hpp"
#include "qca/partitioner.hpp"
#include "qca/schema.hpp"

namespace qca {

/// Where the common attributes live:
///   I   QT_P1 (with CAP) loaded, QT_P0 - CAP raw
///   II  QT_P0 (with CAP) raw, QT_P1 - CAP loaded
///   III QT_P0 - CAP raw, QT_P1 - CAP loaded, CAP in its own loaded fragment
///   IV  as III with the CAP fragment raw
///   V   QT_P0 raw and QT_P1 loaded, CAP stored in both
///   WA  workload-aware baseline: every workload attribute loaded on every node
enum class DistributionCase { I, II, III, IV, V, WA };

std::string_view case_name(DistributionCase c) noexcept;
/// Accepts I..V and WA (case-insensitive); throws InvalidCase otherwise.
DistributionCase parse_case(std::string_view text);
/// Cases the executor can run: I, II, V and WA.
bool is_executable(DistributionCase c) noexcept;

enum class Format { Raw, Loaded };

std::string_view format_name(Format f) noexcept;

struct Fragment {
  std::string name;
  std::string table;
  AttrSet attributes;  // primary keys always included
  Format format = Format::Raw;
  int node = 1;
  std::string file;  // materialized file stem; replicas share one file

  /// Keys first, then the remaining attributes in schema order.
  std::vector<std::string> column_order(const SchemaCatalog& schema) const;
  bool operator==(const Fragment&) const = default;
};

struct Route {
  std::vector<std::string> fragments;
  bool requires_cross_format_join = false;  // the query's attributes span fragments
  int node = 1;

  bool operator==(const Route&) const = default;
};

struct PartitionLayout {
  DistributionCase case_id = DistributionCase::V;
  int nodes = 1;
  std::vector<Fragment> fragments;
  std::map<std::string, Route> routing;  // query id -> route

  const Fragment* find(std::string_view name) const;
  const Fragment& at(std::string_view name) const;
  bool operator==(const PartitionLayout&) const = default;
};

/// Builds the fragments for `case_id`. Simple queries are routed to the raw
/// side and complex queries to the loaded side; a query whose attributes are
/// not all in its home fragment is routed to every fragment it needs and
/// flagged for a cross-format join. With two or more nodes the loaded
/// fragments sit on node 1 and raw fragments are spread over nodes 2..N.
/// Throws InvalidArgument for nodes < 1, InvalidCase for WA (see
/// wa_baseline_layout), and EmptyPartition when cases I-IV lack simple or
/// complex queries.
PartitionLayout plan_layout(const PartitionPlan& plan, DistributionCase case_id, const SchemaCatalog& schema,
                            const QueryCatalog& queries, int nodes);

/// One loaded fragment per table holding every workload attribute, copied
/// onto each node. Queries are spread round-robin over nodes in workload order.
PartitionLayout wa_baseline_layout(const WorkloadList& workload, const QueryCatalog& queries,
                                   const SchemaCatalog& schema, int nodes);

/// attribute -> bytes per row.
using ColumnWidths = std::map<AttrRef, uint64_t>;

/// Every attribute of every table gets `width` bytes per row.
ColumnWidths uniform_widths(const SchemaCatalog& schema, uint64_t width);

struct ReplicationReport {
  uint64_t total_dataset_bytes = 0;
  std::map<std::string, uint64_t> stored_bytes_per_fragment;
  uint64_t replicated_bytes = 0;  // sum over attributes of (copies - 1) * width * rows
  double replication_pct = 0;     // replicated_bytes / total_dataset_bytes
  uint64_t accessed_raw_bytes = 0;
  uint64_t accessed_loaded_bytes = 0;

  bool operator==(const ReplicationReport&) const = default;
};

/// Throws MissingWidth when any schema attribute lacks a width.
ReplicationReport replication_report(const PartitionLayout& layout, const SchemaCatalog& schema,
                                     const ColumnWidths& widths, uint64_t row_count);

/// Reference replication fractions of other techniques, reported alongside
/// computed values and never derived.
struct ReferenceReplication {
  std::string_view technique;
  std::string_view partitioning;
  double replication_pct;
  bool inter_node_communication;
  bool multi_node_loading;
};

const std::vector<ReferenceReplication>& reference_replication();

std::string describe_layout(const PartitionLayout& layout, const SchemaCatalog& schema);
std::string describe_replication(const ReplicationReport& report);

}  // namespace qca
