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

// Workload execution in three regimes and the resulting report.
//
//   seq        one worker, workload-file order, one engine set
//   multicore  worker 1 loads; worker 2 runs raw-only queries on one shared
//              connection meanwhile; queries touching loaded data run on all
//              workers once every load has finished
//   multinode  each node runs its own tasks in file order on isolated engines

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qca/exec.hpp"
#include "qca/ingest.hpp"
#include "qca/layout.hpp"
#include "qca/materializer.hpp"

namespace qca {

enum class RunMode { Sequential, Multicore, Multinode };

std::string_view mode_name(RunMode m) noexcept;
/// seq | multicore | multinode. Throws InvalidArgument.
RunMode parse_mode(std::string_view text);

struct RunInputs {
  const WorkloadList* workload = nullptr;
  const QueryCatalog* queries = nullptr;
  const SchemaCatalog* schema = nullptr;
  const PartitionLayout* layout = nullptr;
  const FragmentFiles* files = nullptr;  // every fragment of the layout
};

struct RunOptions {
  RunMode mode = RunMode::Sequential;
  int workers = 0;  // 0: hardware threads (at least 2 in multicore)
  EvalOptions eval;
};

struct TaskRecord {
  std::string id;
  TaskKind kind = TaskKind::Query;
  int node = 1;
  int worker = 1;
  double start_us = 0;  // from the run (or node) origin
  double end_us = 0;
  std::string engine;  // raw, loaded, raw+loaded, load, truncate, none
  uint64_t raw_bytes = 0;     // file bytes parsed by raw connections
  uint64_t loaded_bytes = 0;  // bytes loaded (load tasks) or read from loaded columns
  uint64_t rows_out = 0;
  uint64_t raw_connection = 0;
  uint64_t cross_format_joins = 0;
  std::string error;

  double duration_us() const noexcept { return end_us - start_us; }
  bool operator==(const TaskRecord&) const = default;
};

struct NodeSummary {
  int node = 1;
  double wet_us = 0;
  double dlt_us = 0;
  size_t tasks = 0;

  bool operator==(const NodeSummary&) const = default;
};

struct ExecutionReport {
  static constexpr int kSchemaVersion = 1;

  int schema_version = kSchemaVersion;
  std::string mode;
  std::string case_id;
  int nodes = 1;
  int workers = 1;
  bool complete = true;
  std::string error;  // first task error when incomplete
  std::vector<TaskRecord> tasks;
  double dlt_total_us = 0;
  std::map<std::string, double> qet_us;
  double wet_us = 0;  // makespan; max over nodes in multinode mode
  std::vector<NodeSummary> per_node;
  double node_wet_mean_us = 0;
  double node_wet_max_us = 0;
  std::optional<ReplicationReport> replication;
  uint64_t accessed_raw_bytes = 0;     // sum of task raw_bytes
  uint64_t accessed_loaded_bytes = 0;  // sum of query loaded_bytes
  uint64_t accessed_partition_bytes = 0;  // on-disk size of fragment files the workload touched

  const TaskRecord* find(std::string_view id, int node = 0) const;
  bool operator==(const ExecutionReport&) const = default;
};

/// Checks that the layout is executable and fits the mode, that every query
/// has a parsed statement and a route, and that every fragment has a file.
/// Throws CaseNotExecutable, InvalidArgument, RoutingError.
void validate_run(const RunInputs& in, RunMode mode);

/// Task errors do not throw: the run stops and the report is marked
/// incomplete. Setup problems throw as in validate_run.
ExecutionReport run_sequential(const RunInputs& in, const EvalOptions& eval = {});
ExecutionReport run_multicore(const RunInputs& in, int workers = 0, const EvalOptions& eval = {});
ExecutionReport run_multinode(const RunInputs& in, const EvalOptions& eval = {});
ExecutionReport run_workload(const RunInputs& in, const RunOptions& options);

/// Default worker count for `mode`.
int default_workers(RunMode mode);

std::string report_to_json(const ExecutionReport& report);
/// Throws FormatError on malformed input or an unknown schema version.
ExecutionReport report_from_json(std::string_view text);
void write_report(const ExecutionReport& report, const std::string& path);
ExecutionReport read_report(const std::string& path);
/// One row per task.
std::string report_to_csv(const ExecutionReport& report);

std::string describe_report(const ExecutionReport& report);
/// Side-by-side WET/DLT/QET/replication table; deltas are against the first.
std::string compare_reports(const std::vector<std::pair<std::string, ExecutionReport>>& reports);

}  // namespace qca
