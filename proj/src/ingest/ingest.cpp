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

#include "qca/ingest.hpp"

#include <cctype>
#include <set>

#include "qca/error.hpp"

namespace qca {

namespace {

struct DdlToken {
  std::string text;  // word, or one of "(", ")", ","
  size_t pos;
};

std::vector<DdlToken> ddl_tokens(std::string_view stmt, size_t base) {
  std::vector<DdlToken> out;
  size_t i = 0;
  while (i < stmt.size()) {
    char c = stmt[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')' || c == ',') {
      out.push_back({std::string(1, c), base + i});
      ++i;
    } else if (c == '"' || c == '`') {
      size_t j = stmt.find(c, i + 1);
      if (j == std::string_view::npos) throw Error(Errc::DdlSyntaxError, "unterminated quoted identifier");
      out.push_back({std::string(stmt.substr(i + 1, j - i - 1)), base + i});
      i = j + 1;
    } else {
      size_t j = i;
      while (j < stmt.size() && !std::isspace(static_cast<unsigned char>(stmt[j])) && stmt[j] != '(' &&
             stmt[j] != ')' && stmt[j] != ',')
        ++j;
      out.push_back({std::string(stmt.substr(i, j - i)), base + i});
      i = j;
    }
  }
  return out;
}

TypeTag map_type(const std::string& word, size_t pos) {
  static const std::set<std::string> ints = {"bigint", "int", "integer", "smallint", "tinyint", "int8", "int4", "int2"};
  static const std::set<std::string> floats = {"double", "float", "real", "numeric", "decimal", "float8", "float4"};
  static const std::set<std::string> texts = {"varchar", "char", "text", "string", "character", "nvarchar"};
  auto w = to_lower(word);
  if (ints.count(w)) return TypeTag::Int;
  if (floats.count(w)) return TypeTag::Float;
  if (texts.count(w)) return TypeTag::Text;
  throw Error(Errc::DdlSyntaxError, "unsupported column type '" + word + "' at offset " + std::to_string(pos));
}

[[noreturn]] void ddl_error(const DdlToken* at, size_t fallback, const std::string& what) {
  throw Error(Errc::DdlSyntaxError, what + " at offset " + std::to_string(at ? at->pos : fallback));
}

TableDef parse_create_table(const std::vector<DdlToken>& toks, size_t end_pos) {
  size_t i = 0;
  auto at = [&](size_t k) -> const DdlToken* { return k < toks.size() ? &toks[k] : nullptr; };
  auto expect_word = [&](std::string_view w) {
    if (!at(i) || !iequals(toks[i].text, w)) ddl_error(at(i), end_pos, "expected " + std::string(w));
    ++i;
  };
  auto expect_sym = [&](std::string_view s) {
    if (!at(i) || toks[i].text != s) ddl_error(at(i), end_pos, "expected '" + std::string(s) + "'");
    ++i;
  };
  expect_word("CREATE");
  expect_word("TABLE");
  if (at(i) && iequals(toks[i].text, "IF")) {
    ++i;
    expect_word("NOT");
    expect_word("EXISTS");
  }
  if (!at(i) || toks[i].text == "(") ddl_error(at(i), end_pos, "expected table name");
  TableDef table;
  table.name = toks[i++].text;
  expect_sym("(");
  std::vector<std::string> constraint_keys;
  for (;;) {
    if (!at(i)) ddl_error(nullptr, end_pos, "unterminated column list");
    if (iequals(toks[i].text, "PRIMARY")) {
      ++i;
      expect_word("KEY");
      expect_sym("(");
      for (;;) {
        if (!at(i)) ddl_error(nullptr, end_pos, "unterminated PRIMARY KEY list");
        constraint_keys.push_back(toks[i++].text);
        if (at(i) && toks[i].text == ",") {
          ++i;
          continue;
        }
        expect_sym(")");
        break;
      }
    } else {
      AttributeDef attr;
      attr.name = toks[i++].text;
      if (!at(i) || toks[i].text == "," || toks[i].text == ")")
        ddl_error(at(i), end_pos, "missing type for column '" + attr.name + "'");
      attr.type = map_type(toks[i].text, toks[i].pos);
      ++i;
      if (at(i) && iequals(toks[i].text, "PRECISION")) ++i;
      if (at(i) && toks[i].text == "(") {  // VARCHAR(32), DECIMAL(10,2)
        while (at(i) && toks[i].text != ")") ++i;
        expect_sym(")");
      }
      while (at(i) && toks[i].text != "," && toks[i].text != ")") {
        if (iequals(toks[i].text, "PRIMARY")) {
          ++i;
          expect_word("KEY");
          attr.primary_key = true;
        } else if (iequals(toks[i].text, "NOT")) {
          ++i;
          expect_word("NULL");
        } else if (iequals(toks[i].text, "NULL")) {
          ++i;
        } else {
          ddl_error(at(i), end_pos, "unexpected '" + toks[i].text + "' in column definition");
        }
      }
      table.attributes.push_back(std::move(attr));
    }
    if (at(i) && toks[i].text == ",") {
      ++i;
      continue;
    }
    expect_sym(")");
    break;
  }
  if (at(i)) ddl_error(at(i), end_pos, "unexpected trailing '" + toks[i].text + "'");
  for (const auto& key : constraint_keys) {
    bool found = false;
    for (auto& a : table.attributes)
      if (iequals(a.name, key)) {
        a.primary_key = true;
        found = true;
      }
    if (!found) throw Error(Errc::DdlSyntaxError, "PRIMARY KEY names unknown column '" + key + "'");
  }
  return table;
}

std::string strip_sql_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "--") == 0) {
      while (i < text.size() && text[i] != '\n') {
        out.push_back(' ');
        ++i;
      }
    } else {
      out.push_back(text[i++]);
    }
  }
  return out;
}

}  // namespace

SchemaCatalog extract_schema(std::string_view ddl_text) {
  SchemaCatalog catalog;
  std::string text = strip_sql_comments(ddl_text);
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(';', start);
    if (end == std::string::npos) end = text.size();
    std::string_view stmt(text.data() + start, end - start);
    auto toks = ddl_tokens(stmt, start);
    if (!toks.empty()) catalog.add_table(parse_create_table(toks, end));
    start = end + 1;
  }
  return catalog;
}

std::string_view task_kind_name(TaskKind k) noexcept {
  switch (k) {
    case TaskKind::Query: return "query";
    case TaskKind::Load: return "load";
    case TaskKind::Truncate: return "truncate";
  }
  return "?";
}

const Task* WorkloadList::find(std::string_view id) const {
  for (const auto& t : tasks)
    if (t.id == id) return &t;
  return nullptr;
}

size_t WorkloadList::query_count() const {
  size_t n = 0;
  for (const auto& t : tasks) n += t.kind == TaskKind::Query;
  return n;
}

std::pair<WorkloadList, QueryCatalog> extract_workload(std::string_view workload_text, const SchemaCatalog& schema) {
  WorkloadList workload;
  QueryCatalog catalog;
  std::set<std::string> ids;
  size_t line_no = 0;
  size_t start = 0;
  while (start < workload_text.size()) {
    size_t end = workload_text.find('\n', start);
    if (end == std::string_view::npos) end = workload_text.size();
    std::string_view line = workload_text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;

    size_t tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw Error(Errc::FormatError, "workload line " + std::to_string(line_no) + ": expected task_id<TAB>statement");
    std::string id(line.substr(0, tab));
    while (!id.empty() && id.back() == ' ') id.pop_back();
    while (!id.empty() && id.front() == ' ') id.erase(id.begin());
    std::string statement(line.substr(tab + 1));
    if (id.empty()) throw Error(Errc::FormatError, "workload line " + std::to_string(line_no) + ": empty task id");
    if (!ids.insert(id).second) throw Error(Errc::DuplicateTask, "task id '" + id + "' appears twice");

    Task task;
    task.id = id;
    task.statement = statement;
    try {
      switch (classify_statement(statement)) {
        case StatementKind::Query: {
          task.kind = TaskKind::Query;
          QueryInfo info;
          info.ast = parse_query(statement);
          info.tables = extract_tables(info.ast);
          info.attributes = extract_attributes(info.ast, schema);
          catalog.emplace(id, std::move(info));
          break;
        }
        case StatementKind::Load:
          task.kind = TaskKind::Load;
          task.target_table = schema.at(parse_copy_target(statement)).name;
          break;
        case StatementKind::Truncate:
          task.kind = TaskKind::Truncate;
          task.target_table = schema.at(parse_truncate_target(statement)).name;
          break;
      }
    } catch (const Error& e) {
      throw Error(e.code(), "task " + id + ": " + e.detail());
    }
    workload.tasks.push_back(std::move(task));
  }
  return {std::move(workload), std::move(catalog)};
}

AttrSet workload_attributes(const QueryCatalog& queries) {
  AttrSet all;
  for (const auto& [id, info] : queries) all.insert(info.attributes.begin(), info.attributes.end());
  return all;
}

}  // namespace qca
