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
#include <limits>

#include "qca/error.hpp"
#include "qca/exec.hpp"
#include "qca/simd/kernels.hpp"

namespace qca {

namespace {

template <typename T>
bool compare(const T& a, CompareOp op, const T& b) {
  switch (op) {
    case CompareOp::Lt: return a < b;
    case CompareOp::Le: return a <= b;
    case CompareOp::Gt: return a > b;
    case CompareOp::Ge: return a >= b;
    case CompareOp::Eq: return a == b;
    case CompareOp::Ne: return a != b;
  }
  return false;
}

const Column& column_of(const InstanceInput& in, const std::string& attr) {
  auto it = in.columns.find(attr);
  if (it == in.columns.end() || !it->second)
    throw Error(Errc::AttributeNotInFragment, "attribute '" + attr + "' is not held by the fragment serving this query");
  return *it->second;
}

void apply_predicate(const BoundPredicate& p, const Column& col, uint8_t* mask, size_t n) {
  const auto& k = simd::kernels();
  switch (col.type()) {
    case TypeTag::Int:
      if (const auto* li = std::get_if<int64_t>(&p.literal)) {
        k.filter_i64(col.ints().data(), n, p.op, *li, mask);
      } else {
        const double lit = std::get<double>(p.literal);
        const auto& v = col.ints();
        for (size_t i = 0; i < n; ++i) mask[i] &= compare(static_cast<double>(v[i]), p.op, lit);
      }
      break;
    case TypeTag::Float: {
      const auto* li = std::get_if<int64_t>(&p.literal);
      const double lit = li ? static_cast<double>(*li) : std::get<double>(p.literal);
      k.filter_f64(col.floats().data(), n, p.op, lit, mask);
      break;
    }
    case TypeTag::Text: {
      const auto& lit = std::get<std::string>(p.literal);
      const auto& v = col.texts();
      for (size_t i = 0; i < n; ++i) mask[i] &= compare(v[i], p.op, lit);
      break;
    }
  }
  if (col.has_nulls()) k.and_mask(mask, col.validity().data(), n);
}

std::vector<uint32_t> mask_to_rows(const std::vector<uint8_t>& mask) {
  std::vector<uint32_t> rows;
  rows.reserve(simd::kernels().count_mask(mask.data(), mask.size()));
  for (size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) rows.push_back(static_cast<uint32_t>(i));
  return rows;
}

// Join keys: both Int compare as int64, any Float as double, Text as text.
enum class KeyKind { Int, Float, Text };

KeyKind key_kind(TypeTag a, TypeTag b) {
  if (a == TypeTag::Text) return KeyKind::Text;
  if (a == TypeTag::Int && b == TypeTag::Int) return KeyKind::Int;
  return KeyKind::Float;
}

double float_key(const Column& c, uint32_t row) {
  double d = c.type() == TypeTag::Int ? static_cast<double>(c.ints()[row]) : c.floats()[row];
  return d == 0.0 ? 0.0 : d;  // fold -0.0
}

bool keys_equal(KeyKind kind, const Column& a, uint32_t ra, const Column& b, uint32_t rb) {
  if (!a.is_valid(ra) || !b.is_valid(rb)) return false;
  switch (kind) {
    case KeyKind::Int: return a.ints()[ra] == b.ints()[rb];
    case KeyKind::Float: return float_key(a, ra) == float_key(b, rb);
    case KeyKind::Text: return a.texts()[ra] == b.texts()[rb];
  }
  return false;
}

// Chained hash table over positions 0..n-1 of a row list.
template <typename K>
struct HashTable {
  std::unordered_map<K, uint32_t> head;
  std::vector<uint32_t> chain;

  void build(size_t n, const std::function<bool(uint32_t, K&)>& key_at) {
    chain.assign(n, KeyIndex::kNone);
    head.reserve(n);
    K key{};
    // Reverse insertion keeps each chain in ascending position order.
    for (size_t i = n; i-- > 0;) {
      if (!key_at(static_cast<uint32_t>(i), key)) continue;
      auto [it, fresh] = head.try_emplace(key, static_cast<uint32_t>(i));
      if (!fresh) {
        chain[i] = it->second;
        it->second = static_cast<uint32_t>(i);
      }
    }
  }

  template <typename F>
  void probe(const K& key, F&& fn) const {
    auto it = head.find(key);
    if (it == head.end()) return;
    for (uint32_t p = it->second; p != KeyIndex::kNone; p = chain[p]) fn(p);
  }
};

class Evaluator {
 public:
  Evaluator(const BoundQuery& q, const std::vector<InstanceInput>& inputs, const EvalOptions& opts)
      : q_(q), in_(inputs), opts_(opts) {}

  ResultSet run() {
    const size_t ninst = q_.instance_tables.size();
    if (in_.size() != ninst)
      throw Error(Errc::RoutingError, "query has " + std::to_string(ninst) + " table instances but " +
                                          std::to_string(in_.size()) + " inputs were supplied");
    for (size_t i = 0; i < ninst; ++i)
      for (const auto& a : q_.attributes_of(i)) column_of(in_[i], a);

    selected_.resize(ninst);
    for (size_t i = 0; i < ninst; ++i) selected_[i] = selection(i);

    tuples_.assign(ninst, {});
    joined_.assign(ninst, false);
    applied_.assign(q_.joins.size(), false);
    tuples_[0] = selected_[0];
    count_ = tuples_[0].size();
    joined_[0] = true;
    apply_ready_conditions();
    for (size_t step = 1; step < ninst; ++step) join_next();

    if (!opts_.pushdown) residual_predicates();
    return project();
  }

 private:
  std::vector<uint32_t> selection(size_t inst) {
    const auto& in = in_[inst];
    std::vector<BoundPredicate> preds;
    if (opts_.pushdown)
      for (const auto& p : q_.predicates)
        if (p.column.instance == inst) preds.push_back(p);
    if (preds.empty()) {
      std::vector<uint32_t> all(in.rows);
      for (size_t r = 0; r < in.rows; ++r) all[r] = static_cast<uint32_t>(r);
      return all;
    }
    return select_rows(preds, in);
  }

  const Column& col(const BoundColumn& c) const { return column_of(in_[c.instance], c.attribute); }

  void keep(const std::vector<uint8_t>& ok) {
    for (size_t i = 0; i < tuples_.size(); ++i) {
      if (!joined_[i]) continue;
      auto& t = tuples_[i];
      size_t w = 0;
      for (size_t r = 0; r < count_; ++r)
        if (ok[r]) t[w++] = t[r];
      t.resize(w);
    }
    count_ = 0;
    for (uint8_t v : ok) count_ += v != 0;
  }

  void apply_ready_conditions() {
    for (size_t j = 0; j < q_.joins.size(); ++j) {
      if (applied_[j]) continue;
      const auto& jc = q_.joins[j];
      if (!joined_[jc.left.instance] || !joined_[jc.right.instance]) continue;
      applied_[j] = true;
      const Column& a = col(jc.left);
      const Column& b = col(jc.right);
      KeyKind kind = key_kind(a.type(), b.type());
      const auto& ta = tuples_[jc.left.instance];
      const auto& tb = tuples_[jc.right.instance];
      std::vector<uint8_t> ok(count_);
      for (size_t r = 0; r < count_; ++r) ok[r] = keys_equal(kind, a, ta[r], b, tb[r]);
      keep(ok);
    }
  }

  // Appends instance `b` joined through pairs (tuple position, row of b).
  void extend(size_t b, const std::vector<std::pair<uint32_t, uint32_t>>& pairs) {
    for (size_t i = 0; i < tuples_.size(); ++i) {
      if (!joined_[i]) continue;
      const auto& old = tuples_[i];
      std::vector<uint32_t> fresh(pairs.size());
      for (size_t k = 0; k < pairs.size(); ++k) fresh[k] = old[pairs[k].first];
      tuples_[i] = std::move(fresh);
    }
    std::vector<uint32_t> rows(pairs.size());
    for (size_t k = 0; k < pairs.size(); ++k) rows[k] = pairs[k].second;
    tuples_[b] = std::move(rows);
    joined_[b] = true;
    count_ = pairs.size();
  }

  void join_next() {
    // Prefer an instance linked to the joined set by an equality.
    size_t b = SIZE_MAX, cond = SIZE_MAX;
    for (size_t j = 0; j < q_.joins.size() && b == SIZE_MAX; ++j) {
      const auto& jc = q_.joins[j];
      bool l = joined_[jc.left.instance], r = joined_[jc.right.instance];
      if (l != r) {
        b = l ? jc.right.instance : jc.left.instance;
        cond = j;
      }
    }
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    if (b == SIZE_MAX) {
      for (size_t i = 0; i < joined_.size(); ++i)
        if (!joined_[i]) {
          b = i;
          break;
        }
      const auto& sel = selected_[b];
      pairs.reserve(count_ * sel.size());
      for (size_t t = 0; t < count_; ++t)
        for (uint32_t r : sel) pairs.emplace_back(static_cast<uint32_t>(t), r);
      extend(b, pairs);
      apply_ready_conditions();
      return;
    }

    const auto& jc = q_.joins[cond];
    const BoundColumn& probe_side = jc.left.instance == b ? jc.right : jc.left;
    const BoundColumn& build_side = jc.left.instance == b ? jc.left : jc.right;
    const Column& pc = col(probe_side);
    const Column& bc = col(build_side);
    const auto& probe_rows = tuples_[probe_side.instance];
    const auto& sel = selected_[b];
    const KeyKind kind = key_kind(pc.type(), bc.type());
    applied_[cond] = true;

    const KeyIndex* idx = in_[b].index;
    if (idx && idx->int_keyed() && idx->attributes().size() == 1 && idx->attributes()[0] == build_side.attribute &&
        kind == KeyKind::Int) {
      std::vector<uint8_t> allowed;
      bool filtered = sel.size() != in_[b].rows;
      if (filtered) {
        allowed.assign(in_[b].rows, 0);
        for (uint32_t r : sel) allowed[r] = 1;
      }
      const auto& pv = pc.ints();
      for (size_t t = 0; t < count_; ++t) {
        uint32_t pr = probe_rows[t];
        if (!pc.is_valid(pr)) continue;
        for (uint32_t r = idx->first(pv[pr]); r != KeyIndex::kNone; r = idx->next(r))
          if (!filtered || allowed[r]) pairs.emplace_back(static_cast<uint32_t>(t), r);
      }
    } else if (count_ < sel.size()) {
      // Build on the smaller joined side and scan b; sorting restores
      // tuple-major order.
      hash_join(kind, pc, probe_rows, count_, bc, sel, pairs, /*build_on_probe=*/true);
      std::sort(pairs.begin(), pairs.end());
    } else {
      hash_join(kind, pc, probe_rows, count_, bc, sel, pairs, /*build_on_probe=*/false);
    }
    extend(b, pairs);
    apply_ready_conditions();
  }

  template <typename K>
  static bool key_at(KeyKind kind, const Column& c, uint32_t row, K& out) {
    if (!c.is_valid(row)) return false;
    if constexpr (std::is_same_v<K, int64_t>) {
      out = c.ints()[row];
    } else if constexpr (std::is_same_v<K, double>) {
      out = float_key(c, row);
    } else {
      out = c.texts()[row];
    }
    (void)kind;
    return true;
  }

  template <typename K>
  static void hash_join_typed(KeyKind kind, const Column& pc, const std::vector<uint32_t>& prow, size_t pn,
                              const Column& bc, const std::vector<uint32_t>& sel,
                              std::vector<std::pair<uint32_t, uint32_t>>& pairs, bool build_on_probe) {
    HashTable<K> ht;
    K key{};
    if (build_on_probe) {
      ht.build(pn, [&](uint32_t i, K& k) { return key_at(kind, pc, prow[i], k); });
      for (uint32_t r : sel) {
        if (!key_at(kind, bc, r, key)) continue;
        ht.probe(key, [&](uint32_t t) { pairs.emplace_back(t, r); });
      }
    } else {
      ht.build(sel.size(), [&](uint32_t i, K& k) { return key_at(kind, bc, sel[i], k); });
      for (size_t t = 0; t < pn; ++t) {
        if (!key_at(kind, pc, prow[t], key)) continue;
        ht.probe(key, [&](uint32_t i) { pairs.emplace_back(static_cast<uint32_t>(t), sel[i]); });
      }
    }
  }

  static void hash_join(KeyKind kind, const Column& pc, const std::vector<uint32_t>& prow, size_t pn, const Column& bc,
                        const std::vector<uint32_t>& sel, std::vector<std::pair<uint32_t, uint32_t>>& pairs,
                        bool build_on_probe) {
    switch (kind) {
      case KeyKind::Int: return hash_join_typed<int64_t>(kind, pc, prow, pn, bc, sel, pairs, build_on_probe);
      case KeyKind::Float: return hash_join_typed<double>(kind, pc, prow, pn, bc, sel, pairs, build_on_probe);
      case KeyKind::Text: return hash_join_typed<std::string>(kind, pc, prow, pn, bc, sel, pairs, build_on_probe);
    }
  }

  void residual_predicates() {
    std::vector<uint8_t> ok(count_, 1);
    for (const auto& p : q_.predicates) {
      const Column& c = col(p.column);
      const auto& rows = tuples_[p.column.instance];
      for (size_t r = 0; r < count_; ++r)
        if (ok[r]) ok[r] = matches(c.get(rows[r]), p.op, p.literal);
    }
    keep(ok);
  }

  Value aggregate(const BoundProjection& p) const {
    if (!p.column) return static_cast<int64_t>(count_);  // COUNT(*)
    const Column& c = col(*p.column);
    const auto& rows = tuples_[p.column->instance];
    const auto& k = simd::kernels();
    std::vector<uint8_t> valid(count_);
    for (size_t r = 0; r < count_; ++r) valid[r] = c.is_valid(rows[r]);

    if (c.type() == TypeTag::Text) {
      const auto& v = c.texts();
      const std::string* best = nullptr;
      uint64_t n = 0;
      for (size_t r = 0; r < count_; ++r) {
        if (!valid[r]) continue;
        ++n;
        const std::string& s = v[rows[r]];
        if (!best || (p.func == AggFunc::Min ? s < *best : *best < s)) best = &s;
      }
      if (p.func == AggFunc::Count) return static_cast<int64_t>(n);
      return best ? Value(*best) : Value();
    }

    if (c.type() == TypeTag::Int && p.func != AggFunc::Avg) {
      std::vector<int64_t> vals(count_);
      const auto& src = c.ints();
      for (size_t r = 0; r < count_; ++r) vals[r] = src[rows[r]];
      auto s = k.stats_i64(vals.data(), valid.data(), count_);
      if (p.func == AggFunc::Count) return static_cast<int64_t>(s.count);
      if (s.count == 0) return Value();
      return p.func == AggFunc::Min ? s.min : s.max;
    }

    std::vector<double> vals(count_);
    if (c.type() == TypeTag::Int) {
      const auto& src = c.ints();
      for (size_t r = 0; r < count_; ++r) vals[r] = static_cast<double>(src[rows[r]]);
    } else {
      const auto& src = c.floats();
      for (size_t r = 0; r < count_; ++r) vals[r] = src[rows[r]];
    }
    auto s = k.stats_f64(vals.data(), valid.data(), count_);
    switch (p.func) {
      case AggFunc::Count: return static_cast<int64_t>(s.count);
      case AggFunc::Avg: return s.count ? Value(s.sum / static_cast<double>(s.count)) : Value();
      case AggFunc::Min: return s.count ? Value(s.min) : Value();
      case AggFunc::Max: return s.count ? Value(s.max) : Value();
    }
    return Value();
  }

  ResultSet project() const {
    ResultSet out;
    for (const auto& p : q_.projections) out.columns.push_back(p.label);
    const uint64_t limit = q_.limit.value_or(std::numeric_limits<uint64_t>::max());
    if (q_.aggregate()) {
      if (limit == 0) return out;
      Row row;
      for (const auto& p : q_.projections) row.push_back(aggregate(p));
      out.rows.push_back(std::move(row));
      return out;
    }
    const size_t n = static_cast<size_t>(std::min<uint64_t>(count_, limit));
    out.rows.resize(n);
    for (const auto& p : q_.projections) {
      const Column& c = col(*p.column);
      const auto& rows = tuples_[p.column->instance];
      for (size_t r = 0; r < n; ++r) out.rows[r].push_back(c.get(rows[r]));
    }
    return out;
  }

  const BoundQuery& q_;
  const std::vector<InstanceInput>& in_;
  EvalOptions opts_;
  std::vector<std::vector<uint32_t>> selected_;
  std::vector<std::vector<uint32_t>> tuples_;
  std::vector<bool> joined_;
  std::vector<bool> applied_;
  size_t count_ = 0;
};

}  // namespace

bool matches(const Value& v, CompareOp op, const Literal& literal) {
  if (is_null(v)) return false;
  if (const auto* s = std::get_if<std::string>(&v)) {
    const auto* ls = std::get_if<std::string>(&literal);
    return ls && compare(*s, op, *ls);
  }
  if (std::holds_alternative<std::string>(literal)) return false;
  const auto* vi = std::get_if<int64_t>(&v);
  const auto* li = std::get_if<int64_t>(&literal);
  if (vi && li) return compare(*vi, op, *li);
  double a = vi ? static_cast<double>(*vi) : std::get<double>(v);
  double b = li ? static_cast<double>(*li) : std::get<double>(literal);
  return compare(a, op, b);
}

std::vector<uint32_t> select_rows(const std::vector<BoundPredicate>& predicates, const InstanceInput& input) {
  std::vector<uint8_t> mask(input.rows, 1);
  for (const auto& p : predicates) apply_predicate(p, column_of(input, p.column.attribute), mask.data(), input.rows);
  return mask_to_rows(mask);
}

ResultSet evaluate(const BoundQuery& query, const std::vector<InstanceInput>& inputs, const EvalOptions& options) {
  return Evaluator(query, inputs, options).run();
}

}  // namespace qca
