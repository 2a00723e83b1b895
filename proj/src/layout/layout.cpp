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

#include "qca/layout.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "qca/error.hpp"

namespace qca {

std::string_view case_name(DistributionCase c) noexcept {
  switch (c) {
    case DistributionCase::I: return "I";
    case DistributionCase::II: return "II";
    case DistributionCase::III: return "III";
    case DistributionCase::IV: return "IV";
    case DistributionCase::V: return "V";
    case DistributionCase::WA: return "WA";
  }
  return "?";
}

DistributionCase parse_case(std::string_view text) {
  for (auto c : {DistributionCase::I, DistributionCase::II, DistributionCase::III, DistributionCase::IV,
                 DistributionCase::V, DistributionCase::WA})
    if (iequals(case_name(c), text)) return c;
  throw Error(Errc::InvalidCase, "unknown distribution case '" + std::string(text) + "'");
}

bool is_executable(DistributionCase c) noexcept {
  return c == DistributionCase::I || c == DistributionCase::II || c == DistributionCase::V ||
         c == DistributionCase::WA;
}

std::string_view format_name(Format f) noexcept { return f == Format::Raw ? "raw" : "loaded"; }

std::vector<std::string> Fragment::column_order(const SchemaCatalog& schema) const {
  const auto& def = schema.at(table);
  std::vector<std::string> keys, rest;
  for (const auto& a : def.attributes) {
    if (!attributes.count({def.name, a.name})) continue;
    (a.primary_key ? keys : rest).push_back(a.name);
  }
  keys.insert(keys.end(), rest.begin(), rest.end());
  return keys;
}

const Fragment* PartitionLayout::find(std::string_view name) const {
  for (const auto& f : fragments)
    if (f.name == name) return &f;
  return nullptr;
}

const Fragment& PartitionLayout::at(std::string_view name) const {
  const auto* f = find(name);
  if (!f) throw Error(Errc::RoutingError, "layout has no fragment '" + std::string(name) + "'");
  return *f;
}

namespace {

AttrSet of_table(const AttrSet& attrs, const std::string& table) {
  AttrSet out;
  for (const auto& a : attrs)
    if (a.table == table) out.insert(a);
  return out;
}

AttrSet minus(const AttrSet& a, const AttrSet& b) {
  AttrSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// Attribute groups of one table before keys are added.
struct TableGroups {
  AttrSet raw;
  AttrSet loaded;
  AttrSet cap_fragment;  // cases III/IV only
};

}  // namespace

PartitionLayout plan_layout(const PartitionPlan& plan, DistributionCase case_id, const SchemaCatalog& schema,
                            const QueryCatalog& queries, int nodes) {
  if (nodes < 1) throw Error(Errc::InvalidArgument, "node count must be at least 1");
  if (case_id == DistributionCase::WA)
    throw Error(Errc::InvalidCase, "the WA baseline is planned from the workload, not from a partition plan");

  bool has_simple = false, has_complex = false;
  for (const auto& [id, t] : plan.query_types) (t == 0 ? has_simple : has_complex) = true;
  if (case_id != DistributionCase::V) {
    if (!has_complex)
      throw Error(Errc::EmptyPartition,
                  "case " + std::string(case_name(case_id)) + " needs a loaded QT_P1 partition but no complex queries exist");
    if (!has_simple)
      throw Error(Errc::EmptyPartition,
                  "case " + std::string(case_name(case_id)) + " needs a raw QT_P0 partition but no simple queries exist");
  }

  // Tables touched by each query type.
  std::set<std::string> simple_tables, complex_tables;
  for (const auto& [id, t] : plan.query_types) {
    auto it = queries.find(id);
    if (it == queries.end()) throw Error(Errc::MissingCatalogEntry, "query '" + id + "' missing from catalog");
    for (const auto& inst : it->second.tables) (t == 0 ? simple_tables : complex_tables).insert(schema.at(inst.table).name);
  }

  PartitionLayout layout;
  layout.case_id = case_id;
  layout.nodes = nodes;

  // Fragment index by (table, role).
  std::map<std::string, std::string> raw_home, loaded_home, cap_home;
  int next_raw_node = 2;
  auto add_fragment = [&](const std::string& table, const std::string& role, Format format, AttrSet attrs) {
    for (const auto& k : schema.keys_of(table)) attrs.insert(k);
    Fragment f;
    f.name = table + "_" + role;
    f.table = table;
    f.attributes = std::move(attrs);
    f.format = format;
    if (nodes == 1 || format == Format::Loaded) {
      f.node = 1;
    } else {
      f.node = next_raw_node;
      next_raw_node = next_raw_node == nodes ? 2 : next_raw_node + 1;
    }
    f.file = f.name;
    layout.fragments.push_back(std::move(f));
    return layout.fragments.back().name;
  };

  for (const auto& tdef : schema.tables()) {
    const std::string& table = tdef.name;
    AttrSet p0 = of_table(plan.qt_p0, table);
    AttrSet p1 = of_table(plan.qt_p1, table);
    AttrSet cap = of_table(plan.cap, table);
    bool need_raw = simple_tables.count(table) || !p0.empty();
    bool need_loaded = complex_tables.count(table) || !p1.empty();
    if (!need_raw && !need_loaded) continue;

    TableGroups g;
    switch (case_id) {
      case DistributionCase::I:
        g.raw = minus(p0, cap);
        g.loaded = p1;
        break;
      case DistributionCase::II:
        g.raw = p0;
        g.loaded = minus(p1, cap);
        break;
      case DistributionCase::III:
      case DistributionCase::IV:
        g.raw = minus(p0, cap);
        g.loaded = minus(p1, cap);
        g.cap_fragment = cap;
        break;
      case DistributionCase::V:
        g.raw = p0;
        g.loaded = p1;
        break;
      case DistributionCase::WA:
        break;
    }
    if (need_raw) raw_home[table] = add_fragment(table, "raw", Format::Raw, g.raw);
    if (need_loaded) loaded_home[table] = add_fragment(table, "loaded", Format::Loaded, g.loaded);
    if (!g.cap_fragment.empty())
      cap_home[table] = add_fragment(table, "cap", case_id == DistributionCase::III ? Format::Loaded : Format::Raw,
                                     g.cap_fragment);
  }

  for (const auto& [id, type] : plan.query_types) {
    const auto& info = queries.at(id);
    Route route;
    std::set<std::string> tables;
    for (const auto& inst : info.tables) tables.insert(schema.at(inst.table).name);
    for (const auto& table : tables) {
      const auto& homes = type == 0 ? raw_home : loaded_home;
      const std::string home = homes.at(table);
      std::vector<std::string> needed{home};
      const Fragment& home_frag = layout.at(home);
      for (const auto& attr : of_table(info.attributes, table)) {
        if (home_frag.attributes.count(attr)) continue;
        std::string holder;
        for (const auto& f : layout.fragments)
          if (f.table == table && f.attributes.count(attr)) holder = f.name;
        if (holder.empty())
          throw Error(Errc::RoutingError, "no fragment holds " + to_string(attr) + " needed by " + id);
        if (std::find(needed.begin(), needed.end(), holder) == needed.end()) needed.push_back(holder);
      }
      if (needed.size() > 1) route.requires_cross_format_join = true;
      route.fragments.insert(route.fragments.end(), needed.begin(), needed.end());
    }
    route.node = layout.at(route.fragments.front()).node;
    layout.routing.emplace(id, std::move(route));
  }
  return layout;
}

PartitionLayout wa_baseline_layout(const WorkloadList& workload, const QueryCatalog& queries,
                                   const SchemaCatalog& schema, int nodes) {
  if (nodes < 1) throw Error(Errc::InvalidArgument, "node count must be at least 1");
  PartitionLayout layout;
  layout.case_id = DistributionCase::WA;
  layout.nodes = nodes;
  AttrSet hot = workload_attributes(queries);
  std::set<std::string> tables;
  for (const auto& [id, info] : queries)
    for (const auto& inst : info.tables) tables.insert(schema.at(inst.table).name);
  for (const auto& tdef : schema.tables()) {
    if (!tables.count(tdef.name)) continue;
    AttrSet attrs = of_table(hot, tdef.name);
    for (const auto& k : schema.keys_of(tdef.name)) attrs.insert(k);
    for (int n = 1; n <= nodes; ++n) {
      Fragment f;
      f.name = tdef.name + "_wa" + (nodes > 1 ? "@n" + std::to_string(n) : std::string());
      f.table = tdef.name;
      f.attributes = attrs;
      f.format = Format::Loaded;
      f.node = n;
      f.file = tdef.name + "_wa";
      layout.fragments.push_back(std::move(f));
    }
  }
  size_t i = 0;
  for (const auto& task : workload.tasks) {
    if (task.kind != TaskKind::Query) continue;
    const auto& info = queries.at(task.id);
    Route route;
    route.node = static_cast<int>(i++ % static_cast<size_t>(nodes)) + 1;
    std::set<std::string> qtables;
    for (const auto& inst : info.tables) qtables.insert(schema.at(inst.table).name);
    for (const auto& f : layout.fragments)
      if (f.node == route.node && qtables.count(f.table)) route.fragments.push_back(f.name);
    layout.routing.emplace(task.id, std::move(route));
  }
  return layout;
}

ColumnWidths uniform_widths(const SchemaCatalog& schema, uint64_t width) {
  ColumnWidths widths;
  for (const auto& t : schema.tables())
    for (const auto& a : t.attributes) widths[{t.name, a.name}] = width;
  return widths;
}

ReplicationReport replication_report(const PartitionLayout& layout, const SchemaCatalog& schema,
                                     const ColumnWidths& widths, uint64_t row_count) {
  auto width_of = [&](const AttrRef& a) {
    auto it = widths.find(a);
    if (it == widths.end()) throw Error(Errc::MissingWidth, "no width known for " + to_string(a));
    return it->second;
  };
  ReplicationReport report;
  for (const auto& t : schema.tables())
    for (const auto& a : t.attributes) report.total_dataset_bytes += width_of({t.name, a.name}) * row_count;

  std::map<AttrRef, uint64_t> copies;
  for (const auto& f : layout.fragments) {
    uint64_t bytes = 0;
    for (const auto& a : f.attributes) {
      bytes += width_of(a) * row_count;
      ++copies[a];
    }
    report.stored_bytes_per_fragment[f.name] = bytes;
    (f.format == Format::Raw ? report.accessed_raw_bytes : report.accessed_loaded_bytes) += bytes;
  }
  for (const auto& [attr, n] : copies) report.replicated_bytes += (n - 1) * width_of(attr) * row_count;
  report.replication_pct = report.total_dataset_bytes == 0
                               ? 0.0
                               : static_cast<double>(report.replicated_bytes) /
                                     static_cast<double>(report.total_dataset_bytes);
  return report;
}

const std::vector<ReferenceReplication>& reference_replication() {
  static const std::vector<ReferenceReplication> rows = {
      {"HTAP", "-", 1.00, false, true},
      {"cost-based VP", "VP", 0.106, false, true},
      {"WSAC", "VP", 0.106, false, true},
      {"PDC", "HP", 0.0, true, true},
      {"QCA (SDSS reported)", "VP", 0.018, false, false},
  };
  return rows;
}

std::string describe_layout(const PartitionLayout& layout, const SchemaCatalog& schema) {
  std::ostringstream out;
  out << "Case " << case_name(layout.case_id) << ", " << layout.nodes << " node(s), " << layout.fragments.size()
      << " fragment(s)\n";
  for (const auto& f : layout.fragments) {
    out << "  " << f.name << " [" << format_name(f.format) << ", node " << f.node << "] " << f.attributes.size()
        << " attributes:";
    for (const auto& c : f.column_order(schema)) out << ' ' << c;
    out << '\n';
  }
  size_t cross = 0;
  for (const auto& [id, r] : layout.routing) cross += r.requires_cross_format_join;
  out << "  routing: " << layout.routing.size() << " queries, " << cross << " needing a cross-fragment join\n";
  for (const auto& [id, r] : layout.routing) {
    out << "    " << id << " -> ";
    for (size_t i = 0; i < r.fragments.size(); ++i) out << (i ? " + " : "") << r.fragments[i];
    out << " (node " << r.node << (r.requires_cross_format_join ? ", join" : "") << ")\n";
  }
  return out.str();
}

std::string describe_replication(const ReplicationReport& report) {
  std::ostringstream out;
  char pct[32];
  std::snprintf(pct, sizeof(pct), "%.2f%%", report.replication_pct * 100.0);
  out << "Dataset bytes:     " << report.total_dataset_bytes << '\n';
  out << "Replicated bytes:  " << report.replicated_bytes << " (" << pct << ")\n";
  out << "Accessed raw:      " << report.accessed_raw_bytes << '\n';
  out << "Accessed loaded:   " << report.accessed_loaded_bytes << '\n';
  for (const auto& [name, bytes] : report.stored_bytes_per_fragment) out << "  " << name << ": " << bytes << '\n';
  return out.str();
}

}  // namespace qca
