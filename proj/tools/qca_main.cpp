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

// qca: gen-data -> ingest -> partition -> plan -> materialize -> run -> compare

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qca/csv.hpp"
#include "qca/datagen.hpp"
#include "qca/error.hpp"
#include "qca/ingest.hpp"
#include "qca/layout.hpp"
#include "qca/materializer.hpp"
#include "qca/partitioner.hpp"
#include "qca/scheduler.hpp"
#include "qca/serialize.hpp"
#include "qca/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace qca;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitRuntime = 4;

struct GenArgs {
  std::string out = "data";
  TableProfile table;
  size_t simple_attrs = 7;
  size_t complex_attrs = 6;
  uint64_t workload_seed = 7;
  bool no_workload = false;
};

struct PlanArgs {
  std::string plan, out = "layout.json", case_id = "V";
  int nodes = 1;
  uint64_t width = 8, rows = 0;
};

struct RunArgs {
  std::string layout, mode = "seq", report = "report.json", csv;
  int workers = 0;
  bool no_pushdown = false;
  uint64_t width = 8;
};

void cmd_gen(const GenArgs& a) {
  auto t = gen_table(a.table, a.out);
  std::cout << "wrote " << t.csv.path << " (" << a.table.rows << " rows, " << a.table.columns << " columns)\n";
  std::cout << "wrote " << (fs::path(a.out) / "schema.sql").string() << '\n';
  if (a.no_workload) return;
  WorkloadProfile wp;
  wp.pattern = sky_pattern(a.simple_attrs, a.complex_attrs);
  wp.table = a.table.table;
  wp.seed = a.workload_seed;
  wp.load_path = fs::absolute(t.csv.path).string();
  auto w = gen_workload(t.schema, wp);
  auto path = (fs::path(a.out) / "workload.txt").string();
  write_text_file(path, w.text);
  std::cout << "wrote " << path << " (12 queries; pools: simple " << w.simple_only.size() << ", complex "
            << w.complex_only.size() << ", common " << w.cap.size() << ")\n";
}

void cmd_ingest(const std::string& schema_path, const std::string& workload_path, const std::string& out) {
  PlanInputs in;
  in.schema = extract_schema(read_text_file(schema_path));
  auto [workload, queries] = extract_workload(read_text_file(workload_path), in.schema);
  in.workload = std::move(workload);
  in.queries = std::move(queries);
  write_text_file(out, to_json(in));
  std::cout << "tables: " << in.schema.tables().size() << ", tasks: " << in.workload.tasks.size()
            << ", queries: " << in.queries.size() << ", workload attributes: " << workload_attributes(in.queries).size()
            << '\n';
  for (const auto& t : in.workload.tasks) {
    std::cout << "  " << t.id << " [" << task_kind_name(t.kind) << "]";
    if (t.kind == TaskKind::Query) {
      const auto& q = in.queries.at(t.id);
      std::cout << " instances " << q.tables.size() << ", attributes " << q.attributes.size();
    } else {
      std::cout << ' ' << t.target_table;
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << out << '\n';
}

void cmd_partition(const std::string& inputs, int max_rounds, const std::string& out) {
  if (max_rounds < 1) throw Error(Errc::InvalidArgument, "--max-rounds must be at least 1");
  PlanFile p;
  p.inputs = plan_inputs_from_json(read_text_file(inputs));
  p.max_rounds = max_rounds;
  p.plan = partition(p.inputs.workload, p.inputs.queries, p.inputs.schema, max_rounds);
  write_text_file(out, to_json(p));
  std::cout << describe_plan(p.plan);
  std::cout << "QT_P0 " << p.plan.qt_p0.size() << ", QT_P1 " << p.plan.qt_p1.size() << ", CAP " << p.plan.cap.size()
            << '\n';
  std::cout << "wrote " << out << '\n';
}

void cmd_plan(const PlanArgs& a) {
  LayoutFile l;
  l.plan = plan_from_json(read_text_file(a.plan));
  const auto& in = l.plan.inputs;
  auto c = parse_case(a.case_id);
  l.layout = c == DistributionCase::WA ? wa_baseline_layout(in.workload, in.queries, in.schema, a.nodes)
                                       : plan_layout(l.plan.plan, c, in.schema, in.queries, a.nodes);
  write_text_file(a.out, to_json(l));
  std::cout << describe_layout(l.layout, in.schema);
  if (!is_executable(c)) std::cout << "note: case " << case_name(c) << " is planned but cannot be executed\n";
  auto rows = a.rows ? a.rows : 1;
  auto rep = replication_report(l.layout, in.schema, uniform_widths(in.schema, a.width), rows);
  std::cout << "replication (" << a.width << " B per cell, " << rows << " rows):\n" << describe_replication(rep);
  std::cout << "wrote " << a.out << '\n';
}

void cmd_materialize(const std::string& layout_path, const std::string& source, const std::string& out,
                     const std::string& table, char delimiter, bool verify) {
  LayoutFile l = layout_from_json(read_text_file(layout_path));
  CsvSpec src;
  src.path = source;
  src.delimiter = delimiter;
  src.has_header = true;
  auto files = split(src, l.layout, l.plan.inputs.schema, out, table);
  for (auto& [name, spec] : files) spec.path = fs::absolute(spec.path).string();
  for (const auto& [name, spec] : files)
    std::cout << "  " << name << " -> " << spec.path << " (" << spec.columns.size() << " columns)\n";
  l.files = files;
  write_text_file(layout_path, to_json(l));
  std::cout << "recorded fragment files in " << layout_path << '\n';
  if (verify) {
    std::string t = table;
    if (t.empty()) t = l.layout.fragments.front().table;
    auto rep = verify_split(src, l.plan.inputs.schema.at(t), files);
    std::cout << describe_split_report(rep);
    if (!rep.ok()) throw Error(Errc::FormatError, "split verification failed");
  }
}

uint64_t count_rows(const CsvSpec& spec) {
  CsvReader r(spec.path, spec.delimiter, spec.has_header);
  std::vector<std::string_view> f;
  uint64_t n = 0;
  while (r.next(f)) ++n;
  return n;
}

int cmd_run(const RunArgs& a) {
  LayoutFile l = layout_from_json(read_text_file(a.layout));
  if (l.files.empty()) throw Error(Errc::InvalidArgument, "layout has no fragment files; run materialize first");
  RunInputs in{&l.plan.inputs.workload, &l.plan.inputs.queries, &l.plan.inputs.schema, &l.layout, &l.files};
  RunOptions opt;
  opt.mode = parse_mode(a.mode);
  opt.workers = a.workers;
  opt.eval.pushdown = !a.no_pushdown;
  auto report = run_workload(in, opt);

  // Narrowest fragment file gives the row count cheaply.
  const CsvSpec* narrow = nullptr;
  for (const auto& [_, s] : l.files)
    if (!narrow || s.columns.size() < narrow->columns.size()) narrow = &s;
  report.replication =
      replication_report(l.layout, l.plan.inputs.schema, uniform_widths(l.plan.inputs.schema, a.width), count_rows(*narrow));

  write_report(report, a.report);
  if (!a.csv.empty()) write_text_file(a.csv, report_to_csv(report));
  std::cout << "kernels: " << simd::isa_name(simd::kernels().isa) << '\n' << describe_report(report);
  std::cout << "wrote " << a.report << (a.csv.empty() ? "" : " and " + a.csv) << '\n';
  if (!report.complete) {
    std::cerr << "qca: run incomplete: " << report.error << '\n';
    return kExitRuntime;
  }
  return 0;
}

void cmd_compare(const std::vector<std::string>& paths) {
  std::vector<std::pair<std::string, ExecutionReport>> reports;
  for (const auto& p : paths) reports.emplace_back(fs::path(p).stem().string(), read_report(p));
  std::cout << compare_reports(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Query-complexity-aware partitioning over raw and loaded data"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenArgs gen;
  auto* g = app.add_subcommand("gen-data", "Generate a synthetic table, its DDL and a 12-query workload");
  g->add_option("--columns", gen.table.columns, "Columns including the key")->capture_default_str();
  g->add_option("--rows", gen.table.rows, "Rows")->capture_default_str();
  g->add_option("--seed", gen.table.seed, "Data seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output directory")->capture_default_str();
  g->add_option("--table", gen.table.table, "Table name")->capture_default_str();
  g->add_option("--int-columns", gen.table.int_columns, "Integer columns")->capture_default_str();
  g->add_option("--text-columns", gen.table.text_columns, "Text columns")->capture_default_str();
  g->add_option("--null-fraction", gen.table.null_fraction, "Chance a cell is empty")->capture_default_str();
  g->add_option("--simple-attrs", gen.simple_attrs, "Attributes per simple query")->capture_default_str();
  g->add_option("--complex-attrs", gen.complex_attrs, "Attributes per complex query")->capture_default_str();
  g->add_option("--workload-seed", gen.workload_seed, "Workload seed")->capture_default_str();
  g->add_flag("--no-workload", gen.no_workload, "Skip workload.txt");

  std::string schema_path, workload_path, inputs_out = "plan-inputs.json";
  auto* ing = app.add_subcommand("ingest", "Parse DDL and workload into plan inputs");
  ing->add_option("--schema", schema_path, "DDL file")->required();
  ing->add_option("--workload", workload_path, "Workload file")->required();
  ing->add_option("--out", inputs_out, "Plan inputs file")->capture_default_str();

  std::string inputs, plan_out = "plan.json";
  int max_rounds = 1;
  auto* part = app.add_subcommand("partition", "Classify queries and compute QT_P0, QT_P1 and CAP");
  part->add_option("--inputs", inputs, "Plan inputs file")->required();
  part->add_option("--max-rounds", max_rounds, "Refinement rounds")->capture_default_str();
  part->add_option("--out", plan_out, "Plan file")->capture_default_str();

  PlanArgs pa;
  auto* pl = app.add_subcommand("plan", "Place fragments for a distribution case");
  pl->add_option("--plan", pa.plan, "Plan file")->required();
  pl->add_option("--case", pa.case_id, "I, II, III, IV, V or WA")->capture_default_str();
  pl->add_option("--nodes", pa.nodes, "Nodes")->capture_default_str();
  pl->add_option("--out", pa.out, "Layout file")->capture_default_str();
  pl->add_option("--width", pa.width, "Bytes per cell for the replication report")->capture_default_str();
  pl->add_option("--rows", pa.rows, "Rows for the replication report (default 1)");

  std::string mat_layout, source, mat_out = "fragments", mat_table;
  char delimiter = ';';
  bool verify = false;
  auto* mat = app.add_subcommand("materialize", "Split the source CSV into fragment files");
  mat->add_option("--layout", mat_layout, "Layout file; updated with the fragment files")->required();
  mat->add_option("--source", source, "Source CSV with a header")->required();
  mat->add_option("--out", mat_out, "Output directory")->capture_default_str();
  mat->add_option("--table", mat_table, "Table the source holds (when the layout covers several)");
  mat->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
  mat->add_flag("--verify", verify, "Check every fragment cell against the source");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Execute the workload under a layout");
  run->add_option("--layout", ra.layout, "Materialized layout file")->required();
  run->add_option("--mode", ra.mode, "seq, multicore or multinode")->capture_default_str();
  run->add_option("--workers", ra.workers, "Workers in multicore mode (0: hardware threads)")->capture_default_str();
  run->add_option("--report", ra.report, "Report file")->capture_default_str();
  run->add_option("--csv", ra.csv, "Per-task CSV summary");
  run->add_flag("--no-pushdown", ra.no_pushdown, "Evaluate predicates after joining");
  run->add_option("--width", ra.width, "Bytes per cell for the replication report")->capture_default_str();

  std::vector<std::string> report_paths;
  auto* cmp = app.add_subcommand("compare", "Compare run reports side by side");
  cmp->add_option("--reports", report_paths, "Report files")->required()->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) cmd_gen(gen);
    if (*ing) cmd_ingest(schema_path, workload_path, inputs_out);
    if (*part) cmd_partition(inputs, max_rounds, plan_out);
    if (*pl) cmd_plan(pa);
    if (*mat) cmd_materialize(mat_layout, source, mat_out, mat_table, delimiter, verify);
    if (*run) return cmd_run(ra);
    if (*cmp) cmd_compare(report_paths);
  } catch (const Error& e) {
    std::cerr << "qca: " << errc_name(e.code()) << ": " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "qca: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
