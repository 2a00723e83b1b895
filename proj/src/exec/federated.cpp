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

#include "qca/federated.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "qca/error.hpp"

namespace qca {

namespace {

// One fragment's share of a table instance.
struct Part {
  const Fragment* fragment = nullptr;
  std::vector<std::string> attributes;  // assigned to this fragment
};

// Key -> first row plus a next chain, over a subset of rows.
class RowLookup {
 public:
  void build_int(const Column& key, const std::vector<uint32_t>& rows) {
    int_mode_ = true;
    chain_.assign(key.size(), KeyIndex::kNone);
    ints_.reserve(rows.size());
    for (size_t i = rows.size(); i-- > 0;) {
      uint32_t r = rows[i];
      if (!key.is_valid(r)) continue;
      auto [it, fresh] = ints_.try_emplace(key.ints()[r], r);
      if (!fresh) {
        chain_[r] = it->second;
        it->second = r;
      }
    }
  }

  void build_text(const std::vector<const Column*>& keys, const std::vector<uint32_t>& rows) {
    int_mode_ = false;
    chain_.assign(keys.front()->size(), KeyIndex::kNone);
    texts_.reserve(rows.size());
    for (size_t i = rows.size(); i-- > 0;) {
      uint32_t r = rows[i];
      auto [it, fresh] = texts_.try_emplace(KeyIndex::encode(keys, r), r);
      if (!fresh) {
        chain_[r] = it->second;
        it->second = r;
      }
    }
  }

  uint32_t first(int64_t k) const {
    auto it = ints_.find(k);
    return it == ints_.end() ? KeyIndex::kNone : it->second;
  }
  uint32_t first(const std::string& k) const {
    auto it = texts_.find(k);
    return it == texts_.end() ? KeyIndex::kNone : it->second;
  }
  uint32_t next(uint32_t r) const { return chain_[r]; }

 private:
  bool int_mode_ = true;
  std::unordered_map<int64_t, uint32_t> ints_;
  std::unordered_map<std::string, uint32_t> texts_;
  std::vector<uint32_t> chain_;
};

class Run {
 public:
  Run(const std::string& id, const PartitionLayout& layout, EngineSet& engines, const EvalOptions& options)
      : id_(id), layout_(layout), engines_(engines), options_(options) {
    stats_.query_id = id;
  }

  QueryOutcome execute(const QueryAst& ast) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!is_executable(layout_.case_id))
      throw Error(Errc::CaseNotExecutable, "distribution case " + std::string(case_name(layout_.case_id)) +
                                               " is planned only; every query would need a three-way join");
    auto rit = layout_.routing.find(id_);
    if (rit == layout_.routing.end()) throw Error(Errc::RoutingError, "layout has no route for query '" + id_ + "'");
    const Route& route = rit->second;
    const SchemaCatalog& schema = *engines_.schema;
    BoundQuery q = bind_query(ast, schema);

    std::vector<std::vector<Part>> plan(q.instance_tables.size());
    for (size_t i = 0; i < plan.size(); ++i) plan[i] = assign(q, i, route);

    ResultSet result;
    bool single = std::all_of(plan.begin(), plan.end(), [](const auto& p) { return p.size() == 1; });
    bool all_loaded = single && std::all_of(plan.begin(), plan.end(), [](const auto& p) {
                        return p[0].fragment->format == Format::Loaded;
                      });
    if (single && plan.size() == 1 && plan[0][0].fragment->format == Format::Raw) {
      RawConnection& conn = raw(*plan[0][0].fragment);
      uint64_t before = conn.io().file_bytes_read;
      result = conn.execute(q, options_);
      stats_.raw_bytes_read += conn.io().file_bytes_read - before;
    } else if (all_loaded) {
      std::vector<std::string> names;
      for (const auto& p : plan) {
        names.push_back(p[0].fragment->name);
        auto held = loaded(*p[0].fragment);
        for (const auto& c : table_input(*held, p[0].attributes).columns) stats_.loaded_bytes_accessed += c.second->memory_bytes();
      }
      result = engines_.loaded->execute(q, names, options_);
    } else {
      std::vector<InstanceInput> inputs;
      for (size_t i = 0; i < plan.size(); ++i) inputs.push_back(build_instance(q, i, plan[i]));
      result = evaluate(q, inputs, options_);
    }

    stats_.rows_out = result.size();
    stats_.qet = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0);
    return {std::move(result), stats_};
  }

 private:
  // Every attribute goes to the first routed fragment of its table holding it;
  // the first fragment is the instance's home and always takes part.
  std::vector<Part> assign(const BoundQuery& q, size_t inst, const Route& route) const {
    const std::string& table = q.instance_tables[inst];
    std::vector<const Fragment*> candidates;
    for (const auto& name : route.fragments) {
      const Fragment& f = layout_.at(name);
      if (iequals(f.table, table)) candidates.push_back(&f);
    }
    if (candidates.empty())
      throw Error(Errc::RoutingError, "route of '" + id_ + "' has no fragment of table " + table);
    std::vector<Part> parts{Part{candidates.front(), {}}};
    for (const auto& a : q.attributes_of(inst)) {
      const Fragment* holder = nullptr;
      for (const auto* f : candidates)
        if (f->attributes.count({f->table, a})) {
          holder = f;
          break;
        }
      if (!holder)
        throw Error(Errc::AttributeNotInFragment,
                    "no fragment routed for '" + id_ + "' holds " + table + "." + a);
      auto it = std::find_if(parts.begin(), parts.end(), [&](const Part& p) { return p.fragment == holder; });
      if (it == parts.end()) {
        parts.push_back(Part{holder, {}});
        it = parts.end() - 1;
      }
      it->attributes.push_back(a);
    }
    return parts;
  }

  RawConnection& raw(const Fragment& f) {
    auto it = engines_.raw.find(f.name);
    if (it == engines_.raw.end() || !it->second)
      throw Error(Errc::RoutingError, "no raw connection for fragment '" + f.name + "' on this node");
    stats_.used_raw = true;
    if (!stats_.raw_connection) stats_.raw_connection = it->second->id();
    return *it->second;
  }

  std::shared_ptr<const LoadedTable> loaded(const Fragment& f) {
    if (!engines_.loaded) throw Error(Errc::RoutingError, "no loaded store on this node");
    auto t = engines_.loaded->find(f.name);
    if (!t) throw Error(Errc::TableNotLoaded, "fragment '" + f.name + "' is not loaded");
    stats_.used_loaded = true;
    held_.push_back(t);
    return t;
  }

  InstanceInput part_input(const Part& part, const std::vector<std::string>& attrs) {
    if (part.fragment->format == Format::Raw) {
      RawConnection& conn = raw(*part.fragment);
      uint64_t before = conn.io().file_bytes_read;
      InstanceInput in = conn.input(attrs);
      stats_.raw_bytes_read += conn.io().file_bytes_read - before;
      return in;
    }
    auto t = loaded(*part.fragment);
    InstanceInput in = table_input(*t, attrs);
    for (const auto& c : in.columns) stats_.loaded_bytes_accessed += c.second->memory_bytes();
    return in;
  }

  InstanceInput build_instance(const BoundQuery& q, size_t inst, const std::vector<Part>& parts) {
    if (parts.size() == 1) return part_input(parts[0], parts[0].attributes);

    const std::vector<std::string> keys = engines_.schema->at(q.instance_tables[inst]).key_names();
    std::vector<InstanceInput> inputs;
    std::vector<std::vector<uint32_t>> selected;
    for (const auto& part : parts) {
      std::vector<std::string> attrs = keys;
      for (const auto& a : part.attributes)
        if (std::find(attrs.begin(), attrs.end(), a) == attrs.end()) attrs.push_back(a);
      inputs.push_back(part_input(part, attrs));
      std::vector<BoundPredicate> local;
      if (options_.pushdown)
        for (const auto& p : q.predicates)
          if (p.column.instance == inst &&
              std::find(part.attributes.begin(), part.attributes.end(), p.column.attribute) != part.attributes.end())
            local.push_back(p);
      selected.push_back(select_rows(local, inputs.back()));
    }

    auto key_columns = [&](const InstanceInput& in) {
      std::vector<const Column*> cols;
      for (const auto& k : keys) cols.push_back(in.columns.at(k));
      return cols;
    };

    // rows[p][t]: row of part p in combined tuple t.
    std::vector<std::vector<uint32_t>> rows(parts.size());
    rows[0] = selected[0];
    const auto base_keys = key_columns(inputs[0]);
    const bool int_key = base_keys.size() == 1 && base_keys[0]->type() == TypeTag::Int;

    for (size_t p = 1; p < parts.size(); ++p) {
      const auto part_keys = key_columns(inputs[p]);
      const KeyIndex* index = inputs[p].index;
      const bool use_index = index && int_key && index->int_keyed() && part_keys[0]->type() == TypeTag::Int;
      std::vector<uint8_t> allowed;
      const bool filtered = selected[p].size() != inputs[p].rows;
      RowLookup lookup;
      if (use_index) {
        if (filtered) {
          allowed.assign(inputs[p].rows, 0);
          for (uint32_t r : selected[p]) allowed[r] = 1;
        }
      } else if (int_key && part_keys[0]->type() == TypeTag::Int) {
        lookup.build_int(*part_keys[0], selected[p]);
      } else {
        lookup.build_text(part_keys, selected[p]);
      }

      std::vector<std::pair<uint32_t, uint32_t>> pairs;
      pairs.reserve(rows[0].size());
      const size_t n = rows[0].size();
      for (size_t t = 0; t < n; ++t) {
        uint32_t br = rows[0][t];
        uint32_t r;
        if (int_key && part_keys[0]->type() == TypeTag::Int) {
          if (!base_keys[0]->is_valid(br)) continue;
          int64_t k = base_keys[0]->ints()[br];
          r = use_index ? index->first(k) : lookup.first(k);
        } else {
          r = lookup.first(KeyIndex::encode(base_keys, br));
        }
        for (; r != KeyIndex::kNone; r = use_index ? index->next(r) : lookup.next(r))
          if (!use_index || !filtered || allowed[r]) pairs.emplace_back(static_cast<uint32_t>(t), r);
      }
      for (size_t j = 0; j < p; ++j) {
        std::vector<uint32_t> fresh(pairs.size());
        for (size_t k = 0; k < pairs.size(); ++k) fresh[k] = rows[j][pairs[k].first];
        rows[j] = std::move(fresh);
      }
      rows[p].resize(pairs.size());
      for (size_t k = 0; k < pairs.size(); ++k) rows[p][k] = pairs[k].second;
      ++stats_.cross_format_joins;
    }

    auto owned = std::make_unique<std::map<std::string, Column>>();
    InstanceInput combined;
    combined.rows = rows[0].size();
    for (size_t p = 0; p < parts.size(); ++p) {
      std::vector<std::string> attrs = parts[p].attributes;
      if (p == 0) attrs.insert(attrs.end(), keys.begin(), keys.end());
      for (const auto& a : attrs) {
        if (owned->count(a)) continue;
        auto [it, ok] = owned->emplace(a, inputs[p].columns.at(a)->gather(rows[p]));
        combined.columns[a] = &it->second;
      }
    }
    owned_.push_back(std::move(owned));
    return combined;
  }

  const std::string& id_;
  const PartitionLayout& layout_;
  EngineSet& engines_;
  EvalOptions options_;
  QueryStats stats_;
  std::vector<std::shared_ptr<const LoadedTable>> held_;
  std::vector<std::unique_ptr<std::map<std::string, Column>>> owned_;
};

}  // namespace

QueryOutcome run_query(const std::string& id, const QueryAst& ast, const PartitionLayout& layout, EngineSet& engines,
                       const EvalOptions& options) {
  if (!engines.schema) throw Error(Errc::InvalidArgument, "engine set has no schema");
  return Run(id, layout, engines, options).execute(ast);
}

}  // namespace qca
