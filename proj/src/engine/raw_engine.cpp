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

#include <algorithm>
#include <atomic>

#include "qca/engines.hpp"
#include "qca/error.hpp"
#include "scan.hpp"

namespace qca {

namespace {

std::atomic<uint64_t> next_connection_id{1};

}  // namespace

RawConnection::RawConnection(CsvSpec fragment, const TableDef& table)
    : id_(next_connection_id.fetch_add(1)), spec_(std::move(fragment)) {
  table_ = detail::fragment_table(spec_, table);
}

bool RawConnection::holds(const std::string& attribute) const { return table_.find(attribute) != nullptr; }

void RawConnection::ensure(const std::vector<std::string>& attributes) {
  std::vector<size_t> positions;
  for (const auto& a : attributes) {
    size_t pos = table_.index_of(a);
    if (pos == std::string::npos)
      throw Error(Errc::AttributeNotInFragment,
                  "attribute '" + a + "' is not in raw fragment '" + spec_.path + "'");
    const std::string& name = table_.attributes[pos].name;
    if (cache_.count(name)) {
      ++io_.cache_hits;
      continue;
    }
    if (std::find(positions.begin(), positions.end(), pos) != positions.end()) continue;
    ++io_.cache_misses;
    positions.push_back(pos);
  }
  // COUNT(*) needs the row count even when no column is referenced.
  if (positions.empty() && rows_) return;

  auto scanned = detail::scan_columns(spec_, table_, positions);
  io_.file_bytes_read += scanned.bytes;
  rows_ = scanned.rows;
  for (size_t i = 0; i < positions.size(); ++i)
    cache_.insert_or_assign(table_.attributes[positions[i]].name, std::move(scanned.columns[i]));
}

InstanceInput RawConnection::input(const std::vector<std::string>& attributes) {
  ensure(attributes);
  InstanceInput in;
  in.rows = *rows_;
  for (const auto& a : attributes) {
    const std::string& name = table_.attributes[table_.index_of(a)].name;
    in.columns[name] = &cache_.at(name);
  }
  return in;
}

ResultSet RawConnection::execute(const BoundQuery& query, const EvalOptions& options) {
  if (query.instance_tables.size() != 1)
    throw Error(Errc::RoutingError, "the raw engine answers single-source queries only; got " +
                                        std::to_string(query.instance_tables.size()) + " table instances");
  if (!iequals(query.instance_tables[0], table_.name))
    throw Error(Errc::RoutingError, "query reads " + query.instance_tables[0] + " but raw fragment '" + spec_.path +
                                        "' holds " + table_.name);
  std::vector<InstanceInput> inputs{input(query.attributes_of(0))};
  return evaluate(query, inputs, options);
}

ResultSet RawConnection::execute(const QueryAst& ast, const SchemaCatalog& schema, const EvalOptions& options) {
  return execute(bind_query(ast, schema), options);
}

void RawConnection::evict(const std::vector<std::string>& attributes) {
  for (const auto& a : attributes) {
    const auto* def = table_.find(a);
    if (def) cache_.erase(def->name);
  }
}

void RawConnection::evict_all() {
  cache_.clear();
  rows_.reset();
}

std::vector<std::string> RawConnection::cached() const {
  std::vector<std::string> out;
  for (const auto& [name, col] : cache_) out.push_back(name);
  return out;
}

size_t RawConnection::cached_bytes() const {
  size_t bytes = 0;
  for (const auto& [name, col] : cache_) bytes += col.memory_bytes();
  return bytes;
}

}  // namespace qca
