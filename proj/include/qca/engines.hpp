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

// The two storage engines.
//
// RawConnection answers single-source queries straight from a fragment CSV,
// caching each parsed column on first use. The cache belongs to the
// connection; a second connection over the same file starts cold.
//
// LoadedStore parses whole fragments up front (the load step whose duration
// is the DLT), builds a primary-key index, and answers joins.

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "qca/csv.hpp"
#include "qca/exec.hpp"
#include "qca/query.hpp"
#include "qca/result.hpp"
#include "qca/schema.hpp"

namespace qca {

struct IoCounters {
  uint64_t file_bytes_read = 0;
  uint64_t cache_hits = 0;    // column references served from memory
  uint64_t cache_misses = 0;  // column references that needed a file pass

  bool operator==(const IoCounters&) const = default;
};

class RawConnection {
 public:
  /// Reads the header only. The header must list `fragment.columns` (all of
  /// them attributes of `table`) in that order; with no columns given the
  /// header itself is taken. Throws IoFailure or HeaderMismatch.
  RawConnection(CsvSpec fragment, const TableDef& table);

  uint64_t id() const noexcept { return id_; }
  const CsvSpec& spec() const noexcept { return spec_; }
  const std::string& table() const noexcept { return table_.name; }
  bool holds(const std::string& attribute) const;

  /// Caches every listed attribute that is not cached yet, in one file
  /// pass. Throws AttributeNotInFragment, RowArityMismatch, ParseError.
  void ensure(const std::vector<std::string>& attributes);
  /// Columns for `attributes` (cached first), ready for evaluate().
  InstanceInput input(const std::vector<std::string>& attributes);

  /// Single-source queries over this fragment's table only.
  ResultSet execute(const BoundQuery& query, const EvalOptions& options = {});
  ResultSet execute(const QueryAst& ast, const SchemaCatalog& schema, const EvalOptions& options = {});

  /// Drops the named columns (unknown names are ignored).
  void evict(const std::vector<std::string>& attributes);
  void evict_all();

  const IoCounters& io() const noexcept { return io_; }
  std::vector<std::string> cached() const;
  size_t cached_bytes() const;
  /// Row count, known after the first file pass.
  std::optional<size_t> rows() const noexcept { return rows_; }

 private:
  uint64_t id_;
  CsvSpec spec_;
  TableDef table_;  // restricted to the fragment's columns, in file order
  std::map<std::string, Column> cache_;
  std::optional<size_t> rows_;
  IoCounters io_;
};

struct LoadRecord {
  std::string fragment;
  std::string table;
  uint64_t rows = 0;
  uint64_t bytes_loaded = 0;
  std::chrono::nanoseconds dlt{0};
};

struct LoadedTable {
  std::string name;
  std::string table;
  size_t rows = 0;
  std::map<std::string, Column> columns;
  KeyIndex index;

  size_t memory_bytes() const;
};

/// Loads are exclusive; execution holds shared access and may run
/// concurrently. Tables stay alive for in-flight queries even if truncated.
class LoadedStore {
 public:
  explicit LoadedStore(bool unique_keys = true) : unique_keys_(unique_keys) {}

  /// Parses the whole fragment and indexes its primary key. All-or-nothing:
  /// on error the store is unchanged. Throws IoFailure, HeaderMismatch,
  /// RowArityMismatch, ParseError, DuplicateKey.
  LoadRecord load(const std::string& name, const CsvSpec& fragment, const TableDef& table);

  /// Removes fragment `name`, or every fragment of table `name`. Missing
  /// names are a no-op; the load log is kept.
  void truncate(const std::string& name);

  std::shared_ptr<const LoadedTable> find(const std::string& name) const;
  std::vector<std::string> fragments() const;

  /// Resolves each instance's table to a loaded fragment of that table.
  ResultSet execute(const QueryAst& ast, const SchemaCatalog& schema, const EvalOptions& options = {}) const;
  /// Instance i reads fragment fragments[i]. Throws TableNotLoaded and
  /// AttributeNotInFragment.
  ResultSet execute(const BoundQuery& query, const std::vector<std::string>& fragments,
                    const EvalOptions& options = {}) const;

  std::vector<LoadRecord> load_log() const;
  size_t memory_bytes() const;

 private:
  bool unique_keys_;
  mutable std::shared_mutex mu_;
  std::mutex load_mu_;
  std::map<std::string, std::shared_ptr<const LoadedTable>> tables_;
  std::vector<LoadRecord> log_;
};

/// Columns of `table` usable by evaluate(); `attributes` must all exist.
InstanceInput table_input(const LoadedTable& table, const std::vector<std::string>& attributes);

}  // namespace qca
