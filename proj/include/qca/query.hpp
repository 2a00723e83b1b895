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

// Abstract representation of the supported SELECT dialect:
//
//   SELECT item [, item]* FROM source [, source | JOIN source ON cond]*
//     [WHERE cond [AND cond]*] [LIMIT n] [;]
//
// where an item is a column reference or COUNT/AVG/MIN/MAX over a column
// (or COUNT(*)), and a condition is either `column op literal` or an
// equality between two columns of different table instances.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qca/schema.hpp"
#include "qca/value.hpp"

namespace qca {

struct ColumnRef {
  std::string qualifier;  // alias or table name; empty when unqualified
  std::string column;

  bool operator==(const ColumnRef&) const = default;
};

enum class AggFunc { Count, Avg, Min, Max };

std::string_view agg_name(AggFunc f) noexcept;

struct Aggregate {
  AggFunc func = AggFunc::Count;
  std::optional<ColumnRef> arg;  // nullopt only for COUNT(*)

  bool operator==(const Aggregate&) const = default;
};

using ProjectionItem = std::variant<ColumnRef, Aggregate>;

struct TableInstance {
  std::string table;
  std::optional<std::string> alias;

  bool operator==(const TableInstance&) const = default;
};

struct JoinCondition {
  ColumnRef left;
  ColumnRef right;

  bool operator==(const JoinCondition&) const = default;
};

enum class CompareOp { Lt, Le, Gt, Ge, Eq, Ne };

std::string_view op_symbol(CompareOp op) noexcept;
/// The operator with its operands swapped (a < b  <=>  b > a).
CompareOp flip(CompareOp op) noexcept;

using Literal = std::variant<int64_t, double, std::string>;

struct Predicate {
  ColumnRef column;
  CompareOp op = CompareOp::Eq;
  Literal literal;

  bool operator==(const Predicate&) const = default;
};

struct QueryAst {
  std::vector<ProjectionItem> projections;
  std::vector<TableInstance> sources;
  std::vector<JoinCondition> join_conditions;
  std::vector<Predicate> predicates;
  std::optional<uint64_t> limit;

  bool has_aggregates() const;
  bool operator==(const QueryAst&) const = default;
};

/// Parses one SELECT statement. Throws Error(SyntaxError) with the byte
/// offset and the expected token; out-of-dialect constructs are named.
QueryAst parse_query(std::string_view sql);

/// Canonical SQL text for `ast`; parse_query(render_query(a)) == a.
std::string render_query(const QueryAst& ast);

std::string render_column(const ColumnRef& c);
std::string render_projection(const ProjectionItem& item);

/// Source instances in order, duplicates preserved.
std::vector<TableInstance> extract_tables(const QueryAst& ast);

/// Every (table, attribute) referenced anywhere in the query, using the
/// schema's spelling. COUNT(*) contributes nothing.
AttrSet extract_attributes(const QueryAst& ast, const SchemaCatalog& schema);

// ---------------------------------------------------------------------------
// Statement classification for workload tasks.

enum class StatementKind { Query, Load, Truncate };

/// Looks at the leading keyword only: SELECT, COPY, or TRUNCATE.
StatementKind classify_statement(std::string_view sql);

/// Table named by `TRUNCATE [TABLE] name`.
std::string parse_truncate_target(std::string_view sql);
/// Table named by `COPY name FROM ...`.
std::string parse_copy_target(std::string_view sql);

// ---------------------------------------------------------------------------
// Schema binding.

struct BoundColumn {
  size_t instance = 0;
  std::string attribute;  // schema spelling
  TypeTag type = TypeTag::Int;

  bool operator==(const BoundColumn&) const = default;
};

struct BoundProjection {
  bool is_aggregate = false;
  AggFunc func = AggFunc::Count;
  std::optional<BoundColumn> column;  // empty for COUNT(*)
  std::string label;
};

struct BoundJoin {
  BoundColumn left;
  BoundColumn right;
};

struct BoundPredicate {
  BoundColumn column;
  CompareOp op = CompareOp::Eq;
  Literal literal;
};

/// A query with every column resolved to a source instance.
struct BoundQuery {
  std::vector<std::string> instance_tables;  // schema spelling, one per source
  std::vector<BoundProjection> projections;
  std::vector<BoundJoin> joins;
  std::vector<BoundPredicate> predicates;
  std::optional<uint64_t> limit;

  bool aggregate() const { return !projections.empty() && projections.front().is_aggregate; }
  /// Attributes read from instance `i`, in first-reference order.
  std::vector<std::string> attributes_of(size_t instance) const;
};

/// Resolves columns against the schema. Throws UnknownTable,
/// UnknownAttribute, AmbiguousColumn, or TypeError for literals that cannot
/// be compared with their column.
BoundQuery bind_query(const QueryAst& ast, const SchemaCatalog& schema);

}  // namespace qca
