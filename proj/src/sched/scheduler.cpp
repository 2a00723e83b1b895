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

#include "qca/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "qca/engines.hpp"
#include "qca/error.hpp"
#include "qca/federated.hpp"
#include "qca/serialize.hpp"
#include "serialize/json_detail.hpp"

namespace qca {

namespace {

using Clock = std::chrono::steady_clock;

double micros(Clock::duration d) { return std::chrono::duration<double, std::micro>(d).count(); }

struct NodeEngines {
  std::vector<std::unique_ptr<RawConnection>> owned;
  EngineSet set;
};

std::unique_ptr<NodeEngines> make_engines(const RunInputs& in, int node, LoadedStore* store) {
  auto e = std::make_unique<NodeEngines>();
  e->set.schema = in.schema;
  e->set.loaded = store;
  for (const auto& f : in.layout->fragments) {
    if (f.format != Format::Raw || f.node != node) continue;
    e->owned.push_back(std::make_unique<RawConnection>(in.files->at(f.name), in.schema->at(f.table)));
    e->set.raw[f.name] = e->owned.back().get();
  }
  return e;
}

// Loaded fragments of `table` placed on `node`.
std::vector<const Fragment*> loaded_fragments(const PartitionLayout& layout, const std::string& table, int node) {
  std::vector<const Fragment*> out;
  for (const auto& f : layout.fragments)
    if (f.format == Format::Loaded && f.node == node && iequals(f.table, table)) out.push_back(&f);
  return out;
}

bool touches_loaded(const PartitionLayout& layout, const Route& r) {
  for (const auto& name : r.fragments)
    if (layout.at(name).format == Format::Loaded) return true;
  return false;
}

// Runs one task; errors land in rec.error.
void exec_task(const Task& t, const RunInputs& in, int node, NodeEngines& eng, LoadedStore& store,
               const EvalOptions& eval, TaskRecord& rec) {
  rec.id = t.id;
  rec.kind = t.kind;
  rec.node = node;
  try {
    switch (t.kind) {
      case TaskKind::Query: {
        auto out = run_query(t.id, in.queries->at(t.id).ast, *in.layout, eng.set, eval);
        const auto& s = out.stats;
        rec.engine = s.used_raw && s.used_loaded ? "raw+loaded" : s.used_raw ? "raw" : s.used_loaded ? "loaded" : "none";
        rec.raw_bytes = s.raw_bytes_read;
        rec.loaded_bytes = s.loaded_bytes_accessed;
        rec.rows_out = s.rows_out;
        rec.raw_connection = s.raw_connection;
        rec.cross_format_joins = s.cross_format_joins;
        break;
      }
      case TaskKind::Load:
        rec.engine = "load";
        for (const Fragment* f : loaded_fragments(*in.layout, t.target_table, node)) {
          auto r = store.load(f->name, in.files->at(f->name), in.schema->at(f->table));
          rec.loaded_bytes += r.bytes_loaded;
          rec.rows_out += r.rows;
        }
        break;
      case TaskKind::Truncate:
        rec.engine = "truncate";
        store.truncate(t.target_table);
        break;
    }
  } catch (const Error& e) {
    rec.error = std::string(errc_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
}

// One worker, tasks back to back: each start is the previous end, so the
// lane's WET is the sum of its task durations.
bool run_lane(const std::vector<const Task*>& tasks, const RunInputs& in, int node, NodeEngines& eng,
              LoadedStore& store, const EvalOptions& eval, ExecutionReport& report) {
  double clock = 0;
  for (const Task* t : tasks) {
    TaskRecord rec;
    rec.worker = 1;
    auto t0 = Clock::now();
    exec_task(*t, in, node, eng, store, eval, rec);
    rec.start_us = clock;
    rec.end_us = clock + micros(Clock::now() - t0);
    clock = rec.end_us;
    report.tasks.push_back(rec);
    if (!rec.error.empty()) return false;
  }
  return true;
}

uint64_t file_size_or_zero(const std::string& path) {
  std::error_code ec;
  auto n = std::filesystem::file_size(path, ec);
  return ec ? 0 : n;
}

ExecutionReport start_report(const RunInputs& in, RunMode mode, int workers) {
  ExecutionReport r;
  r.mode = std::string(mode_name(mode));
  r.case_id = std::string(case_name(in.layout->case_id));
  r.nodes = in.layout->nodes;
  r.workers = workers;
  return r;
}

void finalize(ExecutionReport& r, const RunInputs& in) {
  for (const auto& t : r.tasks)
    if (!t.error.empty()) {
      r.complete = false;
      if (r.error.empty()) r.error = t.id + ": " + t.error;
    }
  std::set<std::string> touched;
  for (int node = 1; node <= r.nodes; ++node) {
    NodeSummary s;
    s.node = node;
    double lo = 0, hi = 0;
    bool any = false;
    for (const auto& t : r.tasks) {
      if (t.node != node) continue;
      lo = any ? std::min(lo, t.start_us) : t.start_us;
      hi = any ? std::max(hi, t.end_us) : t.end_us;
      any = true;
      ++s.tasks;
      if (t.kind == TaskKind::Load) s.dlt_us += t.duration_us();
    }
    s.wet_us = any ? hi - lo : 0;
    r.per_node.push_back(s);
  }
  r.dlt_total_us = 0;
  for (const auto& t : r.tasks) {
    if (t.kind == TaskKind::Load) {
      r.dlt_total_us += t.duration_us();
      for (const Fragment* f : loaded_fragments(*in.layout, in.workload->find(t.id)->target_table, t.node))
        touched.insert(in.files->at(f->name).path);
    }
    if (t.kind != TaskKind::Query) continue;
    r.qet_us[t.id] = t.duration_us();
    r.accessed_raw_bytes += t.raw_bytes;
    r.accessed_loaded_bytes += t.loaded_bytes;
    auto route = in.layout->routing.find(t.id);
    if (route != in.layout->routing.end())
      for (const auto& name : route->second.fragments) touched.insert(in.files->at(name).path);
  }
  for (const auto& p : touched) r.accessed_partition_bytes += file_size_or_zero(p);

  double sum = 0, mx = 0;
  for (const auto& s : r.per_node) {
    sum += s.wet_us;
    mx = std::max(mx, s.wet_us);
  }
  r.node_wet_mean_us = r.per_node.empty() ? 0 : sum / static_cast<double>(r.per_node.size());
  r.node_wet_max_us = mx;
  r.wet_us = mx;
}

}  // namespace

std::string_view mode_name(RunMode m) noexcept {
  switch (m) {
    case RunMode::Sequential: return "seq";
    case RunMode::Multicore: return "multicore";
    case RunMode::Multinode: return "multinode";
  }
  return "?";
}

RunMode parse_mode(std::string_view text) {
  if (iequals(text, "seq") || iequals(text, "sequential")) return RunMode::Sequential;
  if (iequals(text, "multicore")) return RunMode::Multicore;
  if (iequals(text, "multinode")) return RunMode::Multinode;
  throw Error(Errc::InvalidArgument, "unknown mode '" + std::string(text) + "' (seq, multicore, multinode)");
}

int default_workers(RunMode mode) {
  if (mode != RunMode::Multicore) return 1;
  return std::max(2, static_cast<int>(std::thread::hardware_concurrency()));
}

const TaskRecord* ExecutionReport::find(std::string_view id, int node) const {
  for (const auto& t : tasks)
    if (t.id == id && (node == 0 || t.node == node)) return &t;
  return nullptr;
}

void validate_run(const RunInputs& in, RunMode mode) {
  if (!in.workload || !in.queries || !in.schema || !in.layout || !in.files)
    throw Error(Errc::InvalidArgument, "run inputs are incomplete");
  const auto& layout = *in.layout;
  if (!is_executable(layout.case_id))
    throw Error(Errc::CaseNotExecutable, "case " + std::string(case_name(layout.case_id)) + " cannot be executed");
  if (mode == RunMode::Multinode && layout.nodes < 2)
    throw Error(Errc::InvalidArgument, "multinode mode needs a layout planned for 2 or more nodes");
  if (mode != RunMode::Multinode && layout.nodes != 1)
    throw Error(Errc::InvalidArgument, "layout is planned for " + std::to_string(layout.nodes) +
                                           " nodes; use multinode mode or plan for 1 node");
  for (const auto& f : layout.fragments)
    if (!in.files->count(f.name))
      throw Error(Errc::InvalidArgument, "fragment " + f.name + " has no materialized file");
  for (const auto& t : in.workload->tasks) {
    if (t.kind != TaskKind::Query) continue;
    if (!in.queries->count(t.id)) throw Error(Errc::MissingCatalogEntry, "no parsed statement for " + t.id);
    auto it = layout.routing.find(t.id);
    if (it == layout.routing.end()) throw Error(Errc::RoutingError, "query " + t.id + " has no route");
    for (const auto& name : it->second.fragments) {
      const Fragment* f = layout.find(name);
      if (!f) throw Error(Errc::RoutingError, "query " + t.id + " is routed to unknown fragment " + name);
      if (f->node != it->second.node)
        throw Error(Errc::RoutingError, "query " + t.id + " on node " + std::to_string(it->second.node) +
                                            " needs fragment " + name + " on node " + std::to_string(f->node));
    }
  }
}

ExecutionReport run_sequential(const RunInputs& in, const EvalOptions& eval) {
  validate_run(in, RunMode::Sequential);
  auto report = start_report(in, RunMode::Sequential, 1);
  LoadedStore store;
  auto eng = make_engines(in, 1, &store);
  std::vector<const Task*> tasks;
  for (const auto& t : in.workload->tasks) tasks.push_back(&t);
  run_lane(tasks, in, 1, *eng, store, eval, report);
  finalize(report, in);
  return report;
}

ExecutionReport run_multinode(const RunInputs& in, const EvalOptions& eval) {
  validate_run(in, RunMode::Multinode);
  auto report = start_report(in, RunMode::Multinode, 1);
  // Nodes share nothing, so running them one after another measures each
  // as if it had the machine to itself.
  for (int node = 1; node <= in.layout->nodes; ++node) {
    LoadedStore store;
    auto eng = make_engines(in, node, &store);
    std::vector<const Task*> tasks;
    for (const auto& t : in.workload->tasks) {
      if (t.kind == TaskKind::Query) {
        if (in.layout->routing.at(t.id).node == node) tasks.push_back(&t);
      } else if (!loaded_fragments(*in.layout, t.target_table, node).empty()) {
        tasks.push_back(&t);
      }
    }
    if (!run_lane(tasks, in, node, *eng, store, eval, report)) break;
  }
  finalize(report, in);
  return report;
}

ExecutionReport run_multicore(const RunInputs& in, int workers, const EvalOptions& eval) {
  validate_run(in, RunMode::Multicore);
  if (workers == 0) workers = default_workers(RunMode::Multicore);
  if (workers < 2) throw Error(Errc::InvalidArgument, "multicore mode needs at least 2 workers");
  auto report = start_report(in, RunMode::Multicore, workers);

  std::vector<const Task*> loads, sq, cq;
  for (const auto& t : in.workload->tasks) {
    if (t.kind != TaskKind::Query)
      loads.push_back(&t);
    else
      (touches_loaded(*in.layout, in.layout->routing.at(t.id)) ? cq : sq).push_back(&t);
  }

  LoadedStore store;
  // Engines are opened before the clock starts; opening reads headers only.
  auto sq_engines = make_engines(in, 1, &store);
  auto load_engines = make_engines(in, 1, &store);
  std::vector<std::unique_ptr<NodeEngines>> pool_engines;
  for (int w = 0; w < workers; ++w) pool_engines.push_back(make_engines(in, 1, &store));

  std::mutex mu;
  std::condition_variable cv;
  bool sq_started = sq.empty();
  std::atomic<bool> abort{false};
  std::vector<TaskRecord> sq_recs, load_recs;
  std::vector<std::vector<TaskRecord>> pool_recs(static_cast<size_t>(workers));

  const auto origin = Clock::now();
  auto timed = [&](const Task& t, NodeEngines& eng, int worker, auto&& on_start) {
    TaskRecord rec;
    rec.worker = worker;
    auto t0 = Clock::now();
    rec.start_us = micros(t0 - origin);
    on_start();
    exec_task(t, in, 1, eng, store, eval, rec);
    rec.end_us = micros(Clock::now() - origin);
    if (!rec.error.empty()) abort = true;
    return rec;
  };

  std::thread sq_thread([&] {
    for (const Task* t : sq) {
      if (abort) break;
      sq_recs.push_back(timed(*t, *sq_engines, 2, [&] {
        std::lock_guard lk(mu);
        if (!sq_started) {
          sq_started = true;
          cv.notify_all();
        }
      }));
    }
    std::lock_guard lk(mu);
    sq_started = true;
    cv.notify_all();
  });

  std::thread loader([&] {
    {
      std::unique_lock lk(mu);
      cv.wait(lk, [&] { return sq_started; });
    }
    for (const Task* t : loads) {
      if (abort) break;
      load_recs.push_back(timed(*t, *load_engines, 1, [] {}));
    }
  });
  loader.join();

  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (size_t i; !abort && (i = next++) < cq.size();)
        pool_recs[static_cast<size_t>(w)].push_back(timed(*cq[i], *pool_engines[static_cast<size_t>(w)], w + 1, [] {}));
    });
  for (auto& th : pool) th.join();
  sq_thread.join();

  auto append = [&](std::vector<TaskRecord>& v) { report.tasks.insert(report.tasks.end(), v.begin(), v.end()); };
  append(load_recs);
  append(sq_recs);
  for (auto& v : pool_recs) append(v);
  std::stable_sort(report.tasks.begin(), report.tasks.end(),
                   [](const TaskRecord& a, const TaskRecord& b) { return a.start_us < b.start_us; });
  finalize(report, in);
  return report;
}

ExecutionReport run_workload(const RunInputs& in, const RunOptions& options) {
  switch (options.mode) {
    case RunMode::Sequential: return run_sequential(in, options.eval);
    case RunMode::Multicore: return run_multicore(in, options.workers, options.eval);
    case RunMode::Multinode: return run_multinode(in, options.eval);
  }
  throw Error(Errc::InvalidArgument, "unknown mode");
}

namespace {

using detail::Json;

TaskKind kind_from(const std::string& s) {
  if (s == "query") return TaskKind::Query;
  if (s == "load") return TaskKind::Load;
  if (s == "truncate") return TaskKind::Truncate;
  throw Error(Errc::FormatError, "unknown task kind '" + s + "'");
}

}  // namespace

std::string report_to_json(const ExecutionReport& r) {
  Json j;
  j["schema_version"] = r.schema_version;
  j["kind"] = "execution-report";
  j["mode"] = r.mode;
  j["case"] = r.case_id;
  j["nodes"] = r.nodes;
  j["workers"] = r.workers;
  j["complete"] = r.complete;
  j["error"] = r.error;
  j["time_unit"] = "us";
  j["wet_us"] = r.wet_us;
  j["dlt_total_us"] = r.dlt_total_us;
  j["node_wet_mean_us"] = r.node_wet_mean_us;
  j["node_wet_max_us"] = r.node_wet_max_us;
  j["accessed_raw_bytes"] = r.accessed_raw_bytes;
  j["accessed_loaded_bytes"] = r.accessed_loaded_bytes;
  j["accessed_partition_bytes"] = r.accessed_partition_bytes;
  Json qet = Json::object();
  for (const auto& [k, v] : r.qet_us) qet[k] = v;
  j["qet_us"] = qet;
  Json nodes = Json::array();
  for (const auto& n : r.per_node)
    nodes.push_back({{"node", n.node}, {"wet_us", n.wet_us}, {"dlt_us", n.dlt_us}, {"tasks", n.tasks}});
  j["per_node"] = nodes;
  j["replication"] = r.replication ? detail::replication_json(*r.replication) : Json();
  Json tasks = Json::array();
  for (const auto& t : r.tasks)
    tasks.push_back({{"id", t.id},
                     {"kind", task_kind_name(t.kind)},
                     {"node", t.node},
                     {"worker", t.worker},
                     {"start_us", t.start_us},
                     {"end_us", t.end_us},
                     {"engine", t.engine},
                     {"raw_bytes", t.raw_bytes},
                     {"loaded_bytes", t.loaded_bytes},
                     {"rows_out", t.rows_out},
                     {"raw_connection", t.raw_connection},
                     {"cross_format_joins", t.cross_format_joins},
                     {"error", t.error}});
  j["tasks"] = tasks;
  return j.dump(2) + "\n";
}

ExecutionReport report_from_json(std::string_view text) {
  Json j = detail::parse_json(text, "report");
  try {
    ExecutionReport r;
    const auto& v = detail::member(j, "schema_version", "report");
    if (!v.is_number_integer() || v.get<int>() != ExecutionReport::kSchemaVersion)
      throw Error(Errc::FormatError, "report: unsupported schema_version " + v.dump());
    if (j.at("kind") != "execution-report") throw Error(Errc::FormatError, "not an execution report");
    r.mode = j.at("mode").get<std::string>();
    r.case_id = j.at("case").get<std::string>();
    r.nodes = j.at("nodes").get<int>();
    r.workers = j.at("workers").get<int>();
    r.complete = j.at("complete").get<bool>();
    r.error = j.at("error").get<std::string>();
    r.wet_us = j.at("wet_us").get<double>();
    r.dlt_total_us = j.at("dlt_total_us").get<double>();
    r.node_wet_mean_us = j.at("node_wet_mean_us").get<double>();
    r.node_wet_max_us = j.at("node_wet_max_us").get<double>();
    r.accessed_raw_bytes = j.at("accessed_raw_bytes").get<uint64_t>();
    r.accessed_loaded_bytes = j.at("accessed_loaded_bytes").get<uint64_t>();
    r.accessed_partition_bytes = j.at("accessed_partition_bytes").get<uint64_t>();
    for (const auto& [k, v] : j.at("qet_us").items()) r.qet_us[k] = v.get<double>();
    for (const auto& n : j.at("per_node"))
      r.per_node.push_back({n.at("node").get<int>(), n.at("wet_us").get<double>(), n.at("dlt_us").get<double>(),
                            n.at("tasks").get<size_t>()});
    if (!j.at("replication").is_null()) r.replication = detail::replication_from(j.at("replication"));
    for (const auto& t : j.at("tasks")) {
      TaskRecord rec;
      rec.id = t.at("id").get<std::string>();
      rec.kind = kind_from(t.at("kind").get<std::string>());
      rec.node = t.at("node").get<int>();
      rec.worker = t.at("worker").get<int>();
      rec.start_us = t.at("start_us").get<double>();
      rec.end_us = t.at("end_us").get<double>();
      rec.engine = t.at("engine").get<std::string>();
      rec.raw_bytes = t.at("raw_bytes").get<uint64_t>();
      rec.loaded_bytes = t.at("loaded_bytes").get<uint64_t>();
      rec.rows_out = t.at("rows_out").get<uint64_t>();
      rec.raw_connection = t.at("raw_connection").get<uint64_t>();
      rec.cross_format_joins = t.at("cross_format_joins").get<uint64_t>();
      rec.error = t.at("error").get<std::string>();
      r.tasks.push_back(std::move(rec));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::FormatError, std::string("report: ") + e.what());
  }
}

void write_report(const ExecutionReport& report, const std::string& path) {
  write_text_file(path, report_to_json(report));
}

ExecutionReport read_report(const std::string& path) { return report_from_json(read_text_file(path)); }

std::string report_to_csv(const ExecutionReport& r) {
  std::ostringstream out;
  out << "task_id,kind,node,worker,start_us,end_us,duration_us,engine,raw_bytes,loaded_bytes,rows_out,"
         "raw_connection,cross_format_joins,error\n";
  out.precision(3);
  out << std::fixed;
  for (const auto& t : r.tasks) {
    std::string err = t.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << t.id << ',' << task_kind_name(t.kind) << ',' << t.node << ',' << t.worker << ',' << t.start_us << ','
        << t.end_us << ',' << t.duration_us() << ',' << t.engine << ',' << t.raw_bytes << ',' << t.loaded_bytes << ','
        << t.rows_out << ',' << t.raw_connection << ',' << t.cross_format_joins << ',' << err << '\n';
  }
  return out.str();
}

namespace {

std::string fixed1(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", x);
  return buf;
}

std::string ms(double us) { return fixed1(us / 1000.0); }

}  // namespace

std::string describe_report(const ExecutionReport& r) {
  std::ostringstream out;
  out << "run: mode=" << r.mode << " case=" << r.case_id << " nodes=" << r.nodes << " workers=" << r.workers
      << (r.complete ? "" : " INCOMPLETE") << '\n';
  out << "  WET " << ms(r.wet_us) << " ms, DLT " << ms(r.dlt_total_us) << " ms, " << r.tasks.size() << " tasks\n";
  if (r.per_node.size() > 1) {
    for (const auto& n : r.per_node)
      out << "  node " << n.node << ": WET " << ms(n.wet_us) << " ms, DLT " << ms(n.dlt_us) << " ms, " << n.tasks
          << " tasks\n";
    out << "  node WET mean " << ms(r.node_wet_mean_us) << " ms, max " << ms(r.node_wet_max_us) << " ms\n";
  }
  for (const auto& t : r.tasks)
    out << "    " << t.id << " [" << t.engine << "] node " << t.node << " worker " << t.worker << ": "
        << ms(t.start_us) << " -> " << ms(t.end_us) << " ms" << (t.error.empty() ? "" : "  ERROR " + t.error) << '\n';
  out << "  accessed: raw " << r.accessed_raw_bytes << " B, loaded " << r.accessed_loaded_bytes << " B, partitions "
      << r.accessed_partition_bytes << " B\n";
  if (r.replication) out << "  replication " << r.replication->replication_pct * 100 << " %\n";
  if (!r.complete) out << "  error: " << r.error << '\n';
  return out.str();
}

std::string compare_reports(const std::vector<std::pair<std::string, ExecutionReport>>& reports) {
  std::ostringstream out;
  if (reports.empty()) return "no reports\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"metric"};
  for (const auto& [name, _] : reports) head.push_back(name);
  rows.push_back(head);
  auto add = [&](const std::string& label, auto get) {
    std::vector<std::string> row{label};
    for (const auto& [_, r] : reports) row.push_back(get(r));
    rows.push_back(row);
  };
  add("mode", [](const ExecutionReport& r) { return r.mode; });
  add("case", [](const ExecutionReport& r) { return r.case_id; });
  add("nodes", [](const ExecutionReport& r) { return std::to_string(r.nodes); });
  add("WET ms", [](const ExecutionReport& r) { return ms(r.wet_us); });
  const double base = reports.front().second.wet_us;
  add("WET vs first %", [&](const ExecutionReport& r) {
    return base > 0 ? fixed1((r.wet_us - base) / base * 100.0) : std::string("-");
  });
  add("DLT ms", [](const ExecutionReport& r) { return ms(r.dlt_total_us); });
  add("sum QET ms", [](const ExecutionReport& r) {
    double s = 0;
    for (const auto& [_, v] : r.qet_us) s += v;
    return ms(s);
  });
  size_t max_nodes = 0;
  for (const auto& [_, r] : reports) max_nodes = std::max(max_nodes, r.per_node.size());
  if (max_nodes > 1) {
    for (size_t n = 0; n < max_nodes; ++n)
      add("node " + std::to_string(n + 1) + " WET ms", [&](const ExecutionReport& r) {
        return n < r.per_node.size() ? ms(r.per_node[n].wet_us) : std::string("-");
      });
    add("node WET mean ms", [](const ExecutionReport& r) { return ms(r.node_wet_mean_us); });
    const auto& first = reports.front().second;
    for (size_t n = 0; n < max_nodes; ++n)
      add("node " + std::to_string(n + 1) + " WET delta ms", [&](const ExecutionReport& r) {
        return n < r.per_node.size() && n < first.per_node.size()
                   ? ms(r.per_node[n].wet_us - first.per_node[n].wet_us)
                   : std::string("-");
      });
  }
  add("replication %", [](const ExecutionReport& r) {
    if (!r.replication) return std::string("-");
    return fixed1(r.replication->replication_pct * 100.0);
  });
  add("raw bytes read", [](const ExecutionReport& r) { return std::to_string(r.accessed_raw_bytes); });
  add("partition bytes", [](const ExecutionReport& r) { return std::to_string(r.accessed_partition_bytes); });
  std::set<std::string> ids;
  for (const auto& [_, r] : reports)
    for (const auto& [id, _q] : r.qet_us) ids.insert(id);
  for (const auto& id : ids)
    add("QET " + id + " ms", [&](const ExecutionReport& r) {
      auto it = r.qet_us.find(id);
      return it == r.qet_us.end() ? std::string("-") : ms(it->second);
    });

  std::vector<size_t> width(head.size(), 0);
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << row[i] << std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace qca
