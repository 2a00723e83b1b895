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

#include "qca/schema.hpp"

#include <algorithm>
#include <cctype>

#include "qca/error.hpp"

namespace qca {

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) noexcept {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

std::string to_string(const AttrRef& a) { return a.table + "." + a.attribute; }

const AttributeDef* TableDef::find(std::string_view attribute) const {
  for (const auto& a : attributes)
    if (iequals(a.name, attribute)) return &a;
  return nullptr;
}

size_t TableDef::index_of(std::string_view attribute) const {
  for (size_t i = 0; i < attributes.size(); ++i)
    if (iequals(attributes[i].name, attribute)) return i;
  return std::string::npos;
}

std::vector<std::string> TableDef::key_names() const {
  std::vector<std::string> keys;
  for (const auto& a : attributes)
    if (a.primary_key) keys.push_back(a.name);
  return keys;
}

void SchemaCatalog::add_table(TableDef table) {
  auto key = to_lower(table.name);
  if (index_.count(key)) throw Error(Errc::DuplicateTable, "table '" + table.name + "' declared twice");
  if (table.attributes.empty())
    throw Error(Errc::DdlSyntaxError, "table '" + table.name + "' declares no attributes");
  std::set<std::string> seen;
  bool has_key = false;
  for (const auto& a : table.attributes) {
    if (!seen.insert(to_lower(a.name)).second)
      throw Error(Errc::DuplicateAttribute, "attribute '" + a.name + "' repeated in table '" + table.name + "'");
    has_key = has_key || a.primary_key;
  }
  if (!has_key) throw Error(Errc::DdlSyntaxError, "table '" + table.name + "' has no PRIMARY KEY");
  index_.emplace(std::move(key), tables_.size());
  tables_.push_back(std::move(table));
}

const TableDef* SchemaCatalog::find(std::string_view table) const {
  auto it = index_.find(to_lower(table));
  return it == index_.end() ? nullptr : &tables_[it->second];
}

const TableDef& SchemaCatalog::at(std::string_view table) const {
  const auto* t = find(table);
  if (!t) throw Error(Errc::UnknownTable, "unknown table '" + std::string(table) + "'");
  return *t;
}

bool SchemaCatalog::is_key(const AttrRef& a) const {
  const auto* t = find(a.table);
  if (!t) return false;
  const auto* def = t->find(a.attribute);
  return def && def->primary_key;
}

TypeTag SchemaCatalog::type_of(const AttrRef& a) const {
  const auto& t = at(a.table);
  const auto* def = t.find(a.attribute);
  if (!def) throw Error(Errc::UnknownAttribute, "unknown attribute '" + to_string(a) + "'");
  return def->type;
}

AttrSet SchemaCatalog::keys_of(std::string_view table) const {
  AttrSet keys;
  const auto& t = at(table);
  for (const auto& name : t.key_names()) keys.insert({t.name, name});
  return keys;
}

}  // namespace qca
