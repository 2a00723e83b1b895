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

#include <charconv>

#include "qca/query.hpp"

namespace qca {

namespace {

std::string render_literal(const Literal& lit) {
  if (const auto* i = std::get_if<int64_t>(&lit)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&lit)) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), *d);
    std::string text(buf, res.ptr);
    // Keep the literal a float when it is read back.
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    return text;
  }
  std::string out = "'";
  for (char c : std::get<std::string>(lit)) {
    if (c == '\'') out += "''";
    else out += c;
  }
  out += "'";
  return out;
}

}  // namespace

std::string render_column(const ColumnRef& c) {
  return c.qualifier.empty() ? c.column : c.qualifier + "." + c.column;
}

std::string render_projection(const ProjectionItem& item) {
  if (const auto* col = std::get_if<ColumnRef>(&item)) return render_column(*col);
  const auto& agg = std::get<Aggregate>(item);
  return std::string(agg_name(agg.func)) + "(" + (agg.arg ? render_column(*agg.arg) : std::string("*")) + ")";
}

std::string render_query(const QueryAst& ast) {
  std::string sql = "SELECT ";
  for (size_t i = 0; i < ast.projections.size(); ++i) {
    if (i) sql += ", ";
    sql += render_projection(ast.projections[i]);
  }
  sql += " FROM ";
  for (size_t i = 0; i < ast.sources.size(); ++i) {
    if (i) sql += ", ";
    sql += ast.sources[i].table;
    if (ast.sources[i].alias) sql += " " + *ast.sources[i].alias;
  }
  bool first = true;
  auto conj = [&] {
    sql += first ? " WHERE " : " AND ";
    first = false;
  };
  for (const auto& j : ast.join_conditions) {
    conj();
    sql += render_column(j.left) + " = " + render_column(j.right);
  }
  for (const auto& p : ast.predicates) {
    conj();
    sql += render_column(p.column) + " " + std::string(op_symbol(p.op)) + " " + render_literal(p.literal);
  }
  if (ast.limit) sql += " LIMIT " + std::to_string(*ast.limit);
  return sql;
}

std::vector<TableInstance> extract_tables(const QueryAst& ast) { return ast.sources; }

}  // namespace qca
