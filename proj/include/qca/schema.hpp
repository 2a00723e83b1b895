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

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qca/value.hpp"

namespace qca {

std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;

struct AttributeDef {
  std::string name;
  TypeTag type = TypeTag::Int;
  bool primary_key = false;

  bool operator==(const AttributeDef&) const = default;
};

struct TableDef {
  std::string name;
  std::vector<AttributeDef> attributes;

  /// Case-insensitive lookup; nullptr when absent.
  const AttributeDef* find(std::string_view attribute) const;
  /// Position in declaration order, or npos.
  size_t index_of(std::string_view attribute) const;
  std::vector<std::string> key_names() const;

  bool operator==(const TableDef&) const = default;
};

/// A (table, attribute) pair using the schema's declared spelling.
struct AttrRef {
  std::string table;
  std::string attribute;

  auto operator<=>(const AttrRef&) const = default;
  bool operator==(const AttrRef&) const = default;
};

using AttrSet = std::set<AttrRef>;

std::string to_string(const AttrRef& a);

/// Tables in declaration order with case-insensitive name lookup.
class SchemaCatalog {
 public:
  /// Throws DuplicateTable / DuplicateAttribute, or DdlSyntaxError when the
  /// table has no attributes or no primary key.
  void add_table(TableDef table);

  const TableDef* find(std::string_view table) const;
  const TableDef& at(std::string_view table) const;
  const std::vector<TableDef>& tables() const noexcept { return tables_; }
  bool empty() const noexcept { return tables_.empty(); }

  bool is_key(const AttrRef& a) const;
  TypeTag type_of(const AttrRef& a) const;
  /// Primary-key attributes of `table` as AttrRefs.
  AttrSet keys_of(std::string_view table) const;

  bool operator==(const SchemaCatalog& other) const { return tables_ == other.tables_; }

 private:
  std::vector<TableDef> tables_;
  std::map<std::string, size_t> index_;
};

}  // namespace qca
