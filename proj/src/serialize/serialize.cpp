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

#include "qca/serialize.hpp"

#include <fstream>
#include <sstream>

#include "qca/error.hpp"
#include "serialize/json_detail.hpp"

namespace qca {

namespace detail {

Json parse_json(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FormatError, std::string(what) + ": " + e.what());
  }
}

const Json& member(const Json& j, const char* key, std::string_view what) {
  if (!j.is_object() || !j.contains(key))
    throw Error(Errc::FormatError, std::string(what) + ": missing field '" + key + "'");
  return j.at(key);
}

Json replication_json(const ReplicationReport& r) {
  Json j;
  j["total_dataset_bytes"] = r.total_dataset_bytes;
  j["stored_bytes_per_fragment"] = Json::object();
  for (const auto& [k, v] : r.stored_bytes_per_fragment) j["stored_bytes_per_fragment"][k] = v;
  j["replicated_bytes"] = r.replicated_bytes;
  j["replication_pct"] = r.replication_pct;
  j["accessed_raw_bytes"] = r.accessed_raw_bytes;
  j["accessed_loaded_bytes"] = r.accessed_loaded_bytes;
  return j;
}

ReplicationReport replication_from(const Json& j) {
  ReplicationReport r;
  r.total_dataset_bytes = j.at("total_dataset_bytes").get<uint64_t>();
  for (const auto& [k, v] : j.at("stored_bytes_per_fragment").items()) r.stored_bytes_per_fragment[k] = v.get<uint64_t>();
  r.replicated_bytes = j.at("replicated_bytes").get<uint64_t>();
  r.replication_pct = j.at("replication_pct").get<double>();
  r.accessed_raw_bytes = j.at("accessed_raw_bytes").get<uint64_t>();
  r.accessed_loaded_bytes = j.at("accessed_loaded_bytes").get<uint64_t>();
  return r;
}

}  // namespace detail

namespace {

using detail::Json;

Json attrs_json(const AttrSet& s) {
  Json a = Json::array();
  for (const auto& r : s) a.push_back(r.table + "." + r.attribute);
  return a;
}

AttrSet attrs_from(const Json& j) {
  AttrSet s;
  for (const auto& v : j) {
    auto text = v.get<std::string>();
    auto dot = text.find('.');
    if (dot == std::string::npos) throw Error(Errc::FormatError, "attribute '" + text + "' is not table.attribute");
    s.insert({text.substr(0, dot), text.substr(dot + 1)});
  }
  return s;
}

Json types_json(const QueryTypeMap& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

QueryTypeMap types_from(const Json& j) {
  QueryTypeMap m;
  for (const auto& [k, v] : j.items()) m[k] = v.get<int>();
  return m;
}

TypeTag type_from(const std::string& s) {
  if (s == "int") return TypeTag::Int;
  if (s == "float") return TypeTag::Float;
  if (s == "text") return TypeTag::Text;
  throw Error(Errc::FormatError, "unknown attribute type '" + s + "'");
}

Json header(const char* kind) {
  Json j;
  j["schema_version"] = kArtifactSchemaVersion;
  j["kind"] = kind;
  return j;
}

void check_header(const Json& j, const char* kind) {
  const auto& v = detail::member(j, "schema_version", kind);
  if (!v.is_number_integer() || v.get<int>() != kArtifactSchemaVersion)
    throw Error(Errc::FormatError, std::string(kind) + ": unsupported schema_version " + v.dump());
  const auto& k = detail::member(j, "kind", kind);
  if (k != kind) throw Error(Errc::FormatError, "expected a " + std::string(kind) + " file, found " + k.dump());
}

Json inputs_json(const PlanInputs& in) {
  Json j = header("plan-inputs");
  Json tables = Json::array();
  for (const auto& t : in.schema.tables()) {
    Json attrs = Json::array();
    for (const auto& a : t.attributes)
      attrs.push_back({{"name", a.name}, {"type", type_name(a.type)}, {"primary_key", a.primary_key}});
    tables.push_back({{"name", t.name}, {"attributes", attrs}});
  }
  j["tables"] = tables;
  Json tasks = Json::array();
  for (const auto& t : in.workload.tasks)
    tasks.push_back({{"id", t.id}, {"kind", task_kind_name(t.kind)}, {"statement", t.statement}});
  j["tasks"] = tasks;
  // Informational; rebuilt from the statements on read.
  Json queries = Json::object();
  for (const auto& [id, q] : in.queries) {
    Json inst = Json::array();
    for (const auto& ti : q.tables) inst.push_back(ti.table);
    queries[id] = {{"instances", inst}, {"attributes", attrs_json(q.attributes)}};
  }
  j["queries"] = queries;
  return j;
}

PlanInputs inputs_from(const Json& j) {
  check_header(j, "plan-inputs");
  PlanInputs in;
  for (const auto& t : detail::member(j, "tables", "plan-inputs")) {
    TableDef def;
    def.name = t.at("name").get<std::string>();
    for (const auto& a : t.at("attributes"))
      def.attributes.push_back(
          {a.at("name").get<std::string>(), type_from(a.at("type").get<std::string>()), a.at("primary_key").get<bool>()});
    in.schema.add_table(std::move(def));
  }
  std::string text;
  for (const auto& t : detail::member(j, "tasks", "plan-inputs")) {
    auto st = t.at("statement").get<std::string>();
    if (st.find('\n') != std::string::npos) throw Error(Errc::FormatError, "statement spans lines");
    text += t.at("id").get<std::string>() + "\t" + st + "\n";
  }
  auto [workload, queries] = extract_workload(text, in.schema);
  in.workload = std::move(workload);
  in.queries = std::move(queries);
  return in;
}

Json subplan_json(const SubPlan& s) {
  return {{"origin", s.origin}, {"types", types_json(s.types)}, {"qt_p0", attrs_json(s.qt_p0)},
          {"qt_p1", attrs_json(s.qt_p1)}, {"cap", attrs_json(s.cap)}, {"qt2", types_json(s.qt2)},
          {"qt3", types_json(s.qt3)}};
}

SubPlan subplan_from(const Json& j) {
  SubPlan s;
  s.origin = j.at("origin").get<std::string>();
  s.types = types_from(j.at("types"));
  s.qt_p0 = attrs_from(j.at("qt_p0"));
  s.qt_p1 = attrs_from(j.at("qt_p1"));
  s.cap = attrs_from(j.at("cap"));
  s.qt2 = types_from(j.at("qt2"));
  s.qt3 = types_from(j.at("qt3"));
  return s;
}

Json plan_json(const PlanFile& p) {
  Json j = header("plan");
  j["max_rounds"] = p.max_rounds;
  const auto& plan = p.plan;
  j["query_types"] = types_json(plan.query_types);
  j["qt_p0"] = attrs_json(plan.qt_p0);
  j["qt_p1"] = attrs_json(plan.qt_p1);
  j["cap"] = attrs_json(plan.cap);
  j["pc_q0"] = plan.pc_q0;
  j["pc_q1"] = plan.pc_q1;
  j["fully_covered"] = plan.fully_covered;
  Json rounds = Json::array();
  for (const auto& r : plan.rounds) {
    Json round = Json::array();
    for (const auto& s : r) round.push_back(subplan_json(s));
    rounds.push_back(round);
  }
  j["rounds"] = rounds;
  j["inputs"] = inputs_json(p.inputs);
  return j;
}

PlanFile plan_from(const Json& j) {
  check_header(j, "plan");
  PlanFile p;
  p.max_rounds = j.at("max_rounds").get<int>();
  p.plan.query_types = types_from(j.at("query_types"));
  p.plan.qt_p0 = attrs_from(j.at("qt_p0"));
  p.plan.qt_p1 = attrs_from(j.at("qt_p1"));
  p.plan.cap = attrs_from(j.at("cap"));
  p.plan.pc_q0 = j.at("pc_q0").get<std::set<std::string>>();
  p.plan.pc_q1 = j.at("pc_q1").get<std::set<std::string>>();
  p.plan.fully_covered = j.at("fully_covered").get<bool>();
  for (const auto& r : j.at("rounds")) {
    std::vector<SubPlan> round;
    for (const auto& s : r) round.push_back(subplan_from(s));
    p.plan.rounds.push_back(std::move(round));
  }
  p.inputs = inputs_from(detail::member(j, "inputs", "plan"));
  return p;
}

Json layout_json(const LayoutFile& l) {
  Json j = header("layout");
  j["case"] = case_name(l.layout.case_id);
  j["nodes"] = l.layout.nodes;
  Json frags = Json::array();
  for (const auto& f : l.layout.fragments)
    frags.push_back({{"name", f.name},
                     {"table", f.table},
                     {"format", format_name(f.format)},
                     {"node", f.node},
                     {"file", f.file},
                     {"attributes", attrs_json(f.attributes)}});
  j["fragments"] = frags;
  Json routing = Json::object();
  for (const auto& [id, r] : l.layout.routing)
    routing[id] = {{"fragments", r.fragments}, {"cross_format_join", r.requires_cross_format_join}, {"node", r.node}};
  j["routing"] = routing;
  Json files = Json::object();
  for (const auto& [name, s] : l.files)
    files[name] = {{"path", s.path},
                   {"delimiter", std::string(1, s.delimiter)},
                   {"has_header", s.has_header},
                   {"columns", s.columns}};
  j["files"] = files;
  j["plan"] = plan_json(l.plan);
  return j;
}

LayoutFile layout_from(const Json& j) {
  check_header(j, "layout");
  LayoutFile l;
  l.layout.case_id = parse_case(j.at("case").get<std::string>());
  l.layout.nodes = j.at("nodes").get<int>();
  for (const auto& f : j.at("fragments")) {
    Fragment fr;
    fr.name = f.at("name").get<std::string>();
    fr.table = f.at("table").get<std::string>();
    auto fmt = f.at("format").get<std::string>();
    if (fmt != "raw" && fmt != "loaded") throw Error(Errc::FormatError, "unknown fragment format '" + fmt + "'");
    fr.format = fmt == "raw" ? Format::Raw : Format::Loaded;
    fr.node = f.at("node").get<int>();
    fr.file = f.at("file").get<std::string>();
    fr.attributes = attrs_from(f.at("attributes"));
    l.layout.fragments.push_back(std::move(fr));
  }
  for (const auto& [id, r] : j.at("routing").items()) {
    Route route;
    route.fragments = r.at("fragments").get<std::vector<std::string>>();
    route.requires_cross_format_join = r.at("cross_format_join").get<bool>();
    route.node = r.at("node").get<int>();
    l.layout.routing[id] = std::move(route);
  }
  for (const auto& [name, s] : j.at("files").items()) {
    CsvSpec spec;
    spec.path = s.at("path").get<std::string>();
    auto d = s.at("delimiter").get<std::string>();
    if (d.size() != 1) throw Error(Errc::FormatError, "delimiter must be one character");
    spec.delimiter = d[0];
    spec.has_header = s.at("has_header").get<bool>();
    spec.columns = s.at("columns").get<std::vector<std::string>>();
    l.files[name] = std::move(spec);
  }
  l.plan = plan_from(detail::member(j, "plan", "layout"));
  return l;
}

template <typename F>
auto guarded(std::string_view text, const char* what, F f) {
  Json j = detail::parse_json(text, what);
  try {
    return f(j);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FormatError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const PlanInputs& inputs) { return inputs_json(inputs).dump(2) + "\n"; }
std::string to_json(const PlanFile& plan) { return plan_json(plan).dump(2) + "\n"; }
std::string to_json(const LayoutFile& layout) { return layout_json(layout).dump(2) + "\n"; }

PlanInputs plan_inputs_from_json(std::string_view text) { return guarded(text, "plan-inputs", inputs_from); }
PlanFile plan_from_json(std::string_view text) { return guarded(text, "plan", plan_from); }
LayoutFile layout_from_json(std::string_view text) { return guarded(text, "layout", layout_from); }

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoFailure, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  if (f.bad()) throw Error(Errc::IoFailure, "read error on '" + path + "'");
  return s.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::IoFailure, "cannot write '" + path + "'");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw Error(Errc::IoFailure, "write error on '" + path + "'");
}

}  // namespace qca
