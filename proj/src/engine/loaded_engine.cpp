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

#include <mutex>

#include "qca/engines.hpp"
#include "qca/error.hpp"
#include "scan.hpp"

namespace qca {

size_t LoadedTable::memory_bytes() const {
  size_t bytes = index.memory_bytes();
  for (const auto& [name, col] : columns) bytes += col.memory_bytes() + col.size();
  return bytes;
}

InstanceInput table_input(const LoadedTable& table, const std::vector<std::string>& attributes) {
  InstanceInput in;
  in.rows = table.rows;
  in.index = &table.index;
  for (const auto& a : attributes) {
    auto it = table.columns.find(a);
    if (it == table.columns.end()) {
      // Case-insensitive fallback for callers holding user spelling.
      for (auto jt = table.columns.begin(); jt != table.columns.end(); ++jt)
        if (iequals(jt->first, a)) it = jt;
    }
    if (it == table.columns.end())
      throw Error(Errc::AttributeNotInFragment, "attribute '" + a + "' is not in loaded fragment '" + table.name + "'");
    in.columns[it->first] = &it->second;
  }
  return in;
}

LoadRecord LoadedStore::load(const std::string& name, const CsvSpec& fragment, const TableDef& table) {
  // Parsing happens outside the table lock so running queries are not
  // blocked; loads into one store are serialized.
  std::lock_guard serial(load_mu_);

  const auto t0 = std::chrono::steady_clock::now();
  CsvSpec spec = fragment;
  TableDef file_table = detail::fragment_table(spec, table);
  std::vector<size_t> positions(file_table.attributes.size());
  for (size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  auto scanned = detail::scan_columns(spec, file_table, positions);

  auto loaded = std::make_shared<LoadedTable>();
  loaded->name = name;
  loaded->table = table.name;
  loaded->rows = scanned.rows;
  std::vector<const Column*> keys;
  std::vector<std::string> key_names;
  for (size_t i = 0; i < positions.size(); ++i) {
    const auto& def = file_table.attributes[i];
    auto [it, ok] = loaded->columns.emplace(def.name, std::move(scanned.columns[i]));
    if (def.primary_key) {
      keys.push_back(&it->second);
      key_names.push_back(def.name);
    }
  }
  if (!keys.empty()) loaded->index.build(keys, key_names, unique_keys_, spec.path);
  const auto t1 = std::chrono::steady_clock::now();

  LoadRecord rec;
  rec.fragment = name;
  rec.table = table.name;
  rec.rows = scanned.rows;
  rec.bytes_loaded = scanned.bytes;
  rec.dlt = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0);

  std::unique_lock lock(mu_);
  tables_[name] = std::move(loaded);
  log_.push_back(rec);
  return rec;
}

void LoadedStore::truncate(const std::string& name) {
  std::unique_lock lock(mu_);
  if (tables_.erase(name)) return;
  for (auto it = tables_.begin(); it != tables_.end();) {
    if (iequals(it->second->table, name))
      it = tables_.erase(it);
    else
      ++it;
  }
}

std::shared_ptr<const LoadedTable> LoadedStore::find(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = tables_.find(name);
  return it == tables_.end() ? nullptr : it->second;
}

std::vector<std::string> LoadedStore::fragments() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [name, t] : tables_) out.push_back(name);
  return out;
}

ResultSet LoadedStore::execute(const QueryAst& ast, const SchemaCatalog& schema, const EvalOptions& options) const {
  BoundQuery bound = bind_query(ast, schema);
  std::vector<std::string> names;
  {
    std::shared_lock lock(mu_);
    for (const auto& table : bound.instance_tables) {
      std::string pick;
      for (const auto& [name, t] : tables_)
        if (iequals(t->table, table)) {
          pick = name;
          break;
        }
      if (pick.empty()) throw Error(Errc::TableNotLoaded, "no loaded fragment of table '" + table + "'");
      names.push_back(pick);
    }
  }
  return execute(bound, names, options);
}

ResultSet LoadedStore::execute(const BoundQuery& query, const std::vector<std::string>& fragments,
                               const EvalOptions& options) const {
  std::vector<std::shared_ptr<const LoadedTable>> held;
  {
    std::shared_lock lock(mu_);
    for (const auto& f : fragments) {
      auto it = tables_.find(f);
      if (it == tables_.end()) throw Error(Errc::TableNotLoaded, "fragment '" + f + "' is not loaded");
      held.push_back(it->second);
    }
  }
  if (held.size() != query.instance_tables.size())
    throw Error(Errc::RoutingError, "query has " + std::to_string(query.instance_tables.size()) +
                                        " table instances but " + std::to_string(held.size()) + " fragments were given");
  std::vector<InstanceInput> inputs;
  for (size_t i = 0; i < held.size(); ++i) {
    if (!iequals(held[i]->table, query.instance_tables[i]))
      throw Error(Errc::RoutingError,
                  "fragment '" + held[i]->name + "' holds " + held[i]->table + ", not " + query.instance_tables[i]);
    inputs.push_back(table_input(*held[i], query.attributes_of(i)));
  }
  return evaluate(query, inputs, options);
}

std::vector<LoadRecord> LoadedStore::load_log() const {
  std::shared_lock lock(mu_);
  return log_;
}

size_t LoadedStore::memory_bytes() const {
  std::shared_lock lock(mu_);
  size_t bytes = 0;
  for (const auto& [name, t] : tables_) bytes += t->memory_bytes();
  return bytes;
}

}  // namespace qca
