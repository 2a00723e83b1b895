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

// Relational evaluation of a bound query over in-memory columns. Both
// engines and the federated executor hand their columns to evaluate().

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "qca/query.hpp"
#include "qca/result.hpp"
#include "qca/value.hpp"

namespace qca {

/// Primary-key lookup: key value -> rows, as a first-row map plus a
/// next-row chain. A single integer key is hashed directly; other keys are
/// encoded as text.
class KeyIndex {
 public:
  static constexpr uint32_t kNone = UINT32_MAX;

  /// Throws DuplicateKey when `unique` and a key repeats, ParseError on a
  /// NULL key. `what` names the table in messages.
  void build(const std::vector<const Column*>& keys, const std::vector<std::string>& names, bool unique,
             const std::string& what);

  bool int_keyed() const noexcept { return int_keyed_; }
  const std::vector<std::string>& attributes() const noexcept { return names_; }
  size_t size() const noexcept { return next_.size(); }

  uint32_t first(int64_t key) const;
  uint32_t first(const std::string& encoded) const;
  uint32_t next(uint32_t row) const { return next_[row]; }

  /// Text encoding of the key of `row` used for non-integer keys.
  static std::string encode(const std::vector<const Column*>& keys, size_t row);

  size_t memory_bytes() const;

 private:
  bool int_keyed_ = false;
  std::vector<std::string> names_;
  std::unordered_map<int64_t, uint32_t> by_int_;
  std::unordered_map<std::string, uint32_t> by_text_;
  std::vector<uint32_t> next_;
};

/// The columns one table instance can read.
struct InstanceInput {
  size_t rows = 0;
  std::map<std::string, const Column*> columns;  // attribute (schema spelling) -> column
  const KeyIndex* index = nullptr;               // optional
};

struct EvalOptions {
  /// Filter each instance before joining. Off evaluates every predicate on
  /// the joined tuples; results are the same either way.
  bool pushdown = true;
};

/// Evaluates `query`; inputs[i] serves instance i. Throws
/// AttributeNotInFragment when an input lacks a referenced column.
ResultSet evaluate(const BoundQuery& query, const std::vector<InstanceInput>& inputs, const EvalOptions& options = {});

/// Rows of `input` satisfying every predicate (all on columns of `input`),
/// ascending. NULL fails every comparison.
std::vector<uint32_t> select_rows(const std::vector<BoundPredicate>& predicates, const InstanceInput& input);

/// Single-row comparison with the same semantics as select_rows.
bool matches(const Value& v, CompareOp op, const Literal& literal);

}  // namespace qca
