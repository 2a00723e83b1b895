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

#include "qca/error.hpp"
#include "qca/query.hpp"

namespace qca {

namespace {

class Binder {
 public:
  Binder(const QueryAst& ast, const SchemaCatalog& schema) : ast_(ast), schema_(schema) {
    for (const auto& src : ast.sources) tables_.push_back(&schema.at(src.table));
  }

  BoundColumn resolve(const ColumnRef& ref) const {
    if (!ref.qualifier.empty()) {
      std::vector<size_t> matches;
      for (size_t i = 0; i < ast_.sources.size(); ++i) {
        const auto& src = ast_.sources[i];
        const std::string& visible = src.alias ? *src.alias : src.table;
        if (iequals(visible, ref.qualifier)) matches.push_back(i);
      }
      if (matches.empty())
        throw Error(Errc::UnknownTable, "no table or alias named '" + ref.qualifier + "' in FROM");
      if (matches.size() > 1)
        throw Error(Errc::AmbiguousColumn, "column '" + render_column(ref) + "' is ambiguous: '" + ref.qualifier +
                                               "' names " + std::to_string(matches.size()) + " table instances");
      const auto* def = tables_[matches[0]]->find(ref.column);
      if (!def)
        throw Error(Errc::UnknownAttribute,
                    "table '" + tables_[matches[0]]->name + "' has no attribute '" + ref.column + "'");
      return {matches[0], def->name, def->type};
    }
    std::vector<size_t> matches;
    for (size_t i = 0; i < tables_.size(); ++i)
      if (tables_[i]->find(ref.column)) matches.push_back(i);
    if (matches.empty()) throw Error(Errc::UnknownAttribute, "no table in FROM has attribute '" + ref.column + "'");
    if (matches.size() > 1) {
      std::string candidates;
      for (size_t i : matches) {
        if (!candidates.empty()) candidates += ", ";
        candidates += tables_[i]->name;
        if (ast_.sources[i].alias) candidates += " " + *ast_.sources[i].alias;
      }
      throw Error(Errc::AmbiguousColumn, "column '" + ref.column + "' is ambiguous; candidates: " + candidates);
    }
    const auto* def = tables_[matches[0]]->find(ref.column);
    return {matches[0], def->name, def->type};
  }

  BoundQuery bind() const {
    BoundQuery out;
    for (const auto* t : tables_) out.instance_tables.push_back(t->name);
    for (const auto& item : ast_.projections) {
      BoundProjection p;
      p.label = render_projection(item);
      if (const auto* col = std::get_if<ColumnRef>(&item)) {
        p.column = resolve(*col);
      } else {
        const auto& agg = std::get<Aggregate>(item);
        p.is_aggregate = true;
        p.func = agg.func;
        if (agg.arg) {
          p.column = resolve(*agg.arg);
          if (agg.func == AggFunc::Avg && p.column->type == TypeTag::Text)
            throw Error(Errc::TypeError, "AVG over text attribute '" + p.column->attribute + "'");
        }
      }
      out.projections.push_back(std::move(p));
    }
    for (const auto& j : ast_.join_conditions) {
      BoundJoin bj{resolve(j.left), resolve(j.right)};
      if ((bj.left.type == TypeTag::Text) != (bj.right.type == TypeTag::Text))
        throw Error(Errc::TypeError, "join compares text with numeric: " + render_column(j.left) + " = " +
                                         render_column(j.right));
      out.joins.push_back(std::move(bj));
    }
    for (const auto& pred : ast_.predicates) {
      BoundPredicate bp{resolve(pred.column), pred.op, pred.literal};
      bool text_lit = std::holds_alternative<std::string>(pred.literal);
      if (text_lit != (bp.column.type == TypeTag::Text))
        throw Error(Errc::TypeError, "predicate on '" + render_column(pred.column) + "' compares " +
                                         std::string(type_name(bp.column.type)) + " with " +
                                         (text_lit ? "a string literal" : "a numeric literal"));
      out.predicates.push_back(std::move(bp));
    }
    out.limit = ast_.limit;
    return out;
  }

 private:
  const QueryAst& ast_;
  const SchemaCatalog& schema_;
  std::vector<const TableDef*> tables_;
};

}  // namespace

std::vector<std::string> BoundQuery::attributes_of(size_t instance) const {
  std::vector<std::string> attrs;
  auto add = [&](const BoundColumn& c) {
    if (c.instance == instance && std::find(attrs.begin(), attrs.end(), c.attribute) == attrs.end())
      attrs.push_back(c.attribute);
  };
  for (const auto& p : projections)
    if (p.column) add(*p.column);
  for (const auto& j : joins) {
    add(j.left);
    add(j.right);
  }
  for (const auto& p : predicates) add(p.column);
  return attrs;
}

BoundQuery bind_query(const QueryAst& ast, const SchemaCatalog& schema) { return Binder(ast, schema).bind(); }

AttrSet extract_attributes(const QueryAst& ast, const SchemaCatalog& schema) {
  auto bound = bind_query(ast, schema);
  AttrSet attrs;
  for (size_t i = 0; i < bound.instance_tables.size(); ++i)
    for (auto& a : bound.attributes_of(i)) attrs.insert({bound.instance_tables[i], std::move(a)});
  return attrs;
}

}  // namespace qca
