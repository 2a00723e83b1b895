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

#include "qca/partitioner.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "qca/error.hpp"

namespace qca {

namespace {

AttrSet set_minus(const AttrSet& a, const AttrSet& b) {
  AttrSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool subset_of(const AttrSet& a, const AttrSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

SubPlan make_subplan(std::string origin, QueryTypeMap types, const QueryCatalog& queries,
                     const WorkloadList& workload) {
  SubPlan sp;
  sp.origin = std::move(origin);
  sp.types = std::move(types);
  std::tie(sp.qt_p0, sp.qt_p1) = gra(queries, sp.types);
  sp.cap = compute_cap(sp.qt_p0, sp.qt_p1);
  sp.qt2 = pcq(queries, set_minus(sp.qt_p0, sp.cap), workload);
  sp.qt3 = pcq(queries, set_minus(sp.qt_p1, sp.cap), workload);
  return sp;
}

bool covered_by(const AttrSet& attrs, const SubPlan& sp) {
  return subset_of(attrs, set_minus(sp.qt_p0, sp.cap)) || subset_of(attrs, set_minus(sp.qt_p1, sp.cap));
}

std::string join_ids(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

std::string join_attrs(const AttrSet& attrs) {
  std::string out;
  for (const auto& a : attrs) {
    if (!out.empty()) out += ", ";
    out += a.attribute;
  }
  return out;
}

}  // namespace

QueryTypeMap qci(const WorkloadList& workload, const QueryCatalog& queries) {
  QueryTypeMap types;
  for (const auto& task : workload.tasks) {
    if (task.kind != TaskKind::Query) continue;
    auto it = queries.find(task.id);
    if (it == queries.end()) throw Error(Errc::MissingCatalogEntry, "query task '" + task.id + "' has no catalog entry");
    types[task.id] = it->second.tables.size() >= 2 ? 1 : 0;
  }
  return types;
}

std::pair<AttrSet, AttrSet> gra(const QueryCatalog& queries, const QueryTypeMap& types) {
  AttrSet p0, p1;
  for (const auto& [id, info] : queries) {
    auto it = types.find(id);
    if (it == types.end()) continue;
    auto& target = it->second == 0 ? p0 : p1;
    target.insert(info.attributes.begin(), info.attributes.end());
  }
  return {std::move(p0), std::move(p1)};
}

AttrSet compute_cap(const AttrSet& qt_p0, const AttrSet& qt_p1) {
  AttrSet cap;
  std::set_intersection(qt_p0.begin(), qt_p0.end(), qt_p1.begin(), qt_p1.end(), std::inserter(cap, cap.end()));
  return cap;
}

QueryTypeMap pcq(const QueryCatalog& queries, const AttrSet& partition, const WorkloadList& workload) {
  QueryTypeMap flags;
  for (const auto& task : workload.tasks)
    if (task.kind == TaskKind::Query) flags[task.id] = 0;
  for (const auto& [id, info] : queries) {
    for (const auto& attr : info.attributes) {
      if (!partition.count(attr)) {
        flags[id] = 1;
        break;
      }
    }
  }
  return flags;
}

QueryCatalog strip_keys(const QueryCatalog& queries, const SchemaCatalog& schema) {
  QueryCatalog out = queries;
  for (auto& [id, info] : out) std::erase_if(info.attributes, [&](const AttrRef& a) { return schema.is_key(a); });
  return out;
}

PartitionPlan partition(const WorkloadList& workload, const QueryCatalog& queries, const SchemaCatalog& schema,
                        int max_rounds) {
  if (max_rounds < 1) throw Error(Errc::InvalidArgument, "max_rounds must be at least 1");
  const QueryCatalog grouped = strip_keys(queries, schema);

  PartitionPlan plan;
  plan.query_types = qci(workload, queries);
  plan.rounds.push_back({make_subplan("qci", plan.query_types, grouped, workload)});
  const SubPlan& first = plan.rounds.front().front();
  plan.qt_p0 = first.qt_p0;
  plan.qt_p1 = first.qt_p1;
  plan.cap = first.cap;
  for (const auto& [id, type] : plan.query_types) {
    if (type == 0 && first.qt2.at(id) == 1) plan.pc_q0.insert(id);
    if (type == 1 && first.qt3.at(id) == 1) plan.pc_q1.insert(id);
  }

  auto all_covered = [&] {
    for (const auto& [id, info] : grouped) {
      bool ok = false;
      for (const auto& round : plan.rounds)
        for (const auto& sp : round) ok = ok || covered_by(info.attributes, sp);
      if (!ok) return false;
    }
    return true;
  };

  std::set<QueryTypeMap> seen{plan.query_types};
  plan.fully_covered = all_covered();
  for (int round = 2; round <= max_rounds && !plan.fully_covered; ++round) {
    std::vector<SubPlan> next;
    for (const auto& parent : plan.rounds.back()) {
      for (const auto& [suffix, map] : {std::pair{"/qt2", &parent.qt2}, std::pair{"/qt3", &parent.qt3}}) {
        if (!seen.insert(*map).second) continue;
        next.push_back(make_subplan(parent.origin + suffix, *map, grouped, workload));
      }
    }
    if (next.empty()) break;
    plan.rounds.push_back(std::move(next));
    plan.fully_covered = all_covered();
  }
  return plan;
}

std::string describe_plan(const PartitionPlan& plan) {
  std::ostringstream out;
  out << "Query types (0 = simple, 1 = complex)\n";
  out << "  Q_ID :";
  for (const auto& [id, t] : plan.query_types) out << ' ' << id;
  out << "\n  Type :";
  for (const auto& [id, t] : plan.query_types) out << ' ' << std::string(id.size() - 1, ' ') << t;
  out << '\n';
  for (size_t r = 0; r < plan.rounds.size(); ++r) {
    for (const auto& sp : plan.rounds[r]) {
      std::set<std::string> pc0, pc1;
      for (const auto& [id, t] : sp.types) {
        if (t == 0 && sp.qt2.at(id)) pc0.insert(id);
        if (t == 1 && sp.qt3.at(id)) pc1.insert(id);
      }
      out << "Round " << (r + 1) << " [" << sp.origin << "]\n";
      out << "  QT_P0 (" << sp.qt_p0.size() << "): " << join_attrs(sp.qt_p0) << '\n';
      out << "  QT_P1 (" << sp.qt_p1.size() << "): " << join_attrs(sp.qt_p1) << '\n';
      out << "  CAP   (" << sp.cap.size() << "): " << join_attrs(sp.cap) << '\n';
      out << "  PC_Q0: " << join_ids(pc0) << '\n';
      out << "  PC_Q1: " << join_ids(pc1) << '\n';
    }
  }
  out << "Fully covered: " << (plan.fully_covered ? "yes" : "no") << '\n';
  return out.str();
}

}  // namespace qca
