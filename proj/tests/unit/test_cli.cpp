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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>

#include "qca/scheduler.hpp"
#include "qca/serialize.hpp"
#include "support/rng.hpp"

using namespace qca;
using namespace qca::testing;

namespace {

struct Out {
  int code = -1;
  std::string text;  // stdout and stderr
};

Out qca_run(const std::string& args) {
  std::string cmd = std::string("'") + QCA_CLI_PATH + "' " + args + " 2>&1";
  Out o;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return o;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) o.text.append(buf, n);
  int st = pclose(p);
  o.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return o;
}

std::string q(const std::string& path) { return "'" + path + "'"; }

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(qca_run("--help").code, 0);
  EXPECT_EQ(qca_run("").code, 2);
  EXPECT_EQ(qca_run("frobnicate").code, 2);
  EXPECT_EQ(qca_run("ingest --schema").code, 2);
  EXPECT_EQ(qca_run("plan --plan x.json --nodes many").code, 2);
}

TEST(Cli, InputErrors) {
  TempDir d;
  spit(d.file("bad.sql"), "CREATE TABLE t (a INT);");
  spit(d.file("w.txt"), "Q1\tSELECT a FROM t\n");
  auto o = qca_run("ingest --schema " + q(d.file("bad.sql")) + " --workload " + q(d.file("w.txt")) + " --out " +
                   q(d.file("in.json")));
  EXPECT_EQ(o.code, 3) << o.text;
  EXPECT_NE(o.text.find("DdlSyntaxError"), std::string::npos);

  spit(d.file("ok.sql"), "CREATE TABLE t (k INT PRIMARY KEY, a INT);");
  spit(d.file("w2.txt"), "Q1\tSELECT a FROM t ORDER BY a\n");
  o = qca_run("ingest --schema " + q(d.file("ok.sql")) + " --workload " + q(d.file("w2.txt")) + " --out " +
              q(d.file("in.json")));
  EXPECT_EQ(o.code, 3) << o.text;

  spit(d.file("junk.json"), "{ nope");
  EXPECT_EQ(qca_run("partition --inputs " + q(d.file("junk.json")) + " --out " + q(d.file("p.json"))).code, 3);
  EXPECT_EQ(qca_run("partition --inputs " + q(d.file("absent.json"))).code, 4);  // IoFailure
}

TEST(Cli, FullPipeline) {
  TempDir d;
  auto data = d.file("data");
  auto o = qca_run("gen-data --rows 2000 --columns 100 --out " + q(data));
  ASSERT_EQ(o.code, 0) << o.text;
  o = qca_run("ingest --schema " + q(data + "/schema.sql") + " --workload " + q(data + "/workload.txt") + " --out " +
              q(d.file("in.json")));
  ASSERT_EQ(o.code, 0) << o.text;
  o = qca_run("partition --inputs " + q(d.file("in.json")) + " --out " + q(d.file("plan.json")));
  ASSERT_EQ(o.code, 0) << o.text;
  auto pf = plan_from_json(read_text_file(d.file("plan.json")));
  EXPECT_EQ(pf.plan.cap.size(), 10u);
  EXPECT_EQ(pf.plan.query_types.size(), 12u);

  for (std::string c : {"V", "WA", "I"}) {
    auto layout = d.file("layout_" + c + ".json");
    o = qca_run("plan --plan " + q(d.file("plan.json")) + " --case " + c + " --out " + q(layout));
    ASSERT_EQ(o.code, 0) << o.text;
    o = qca_run("materialize --layout " + q(layout) + " --source " + q(data + "/PhotoPrimary.csv") + " --out " +
                q(d.file("frag_" + c)) + " --verify");
    ASSERT_EQ(o.code, 0) << o.text;
    EXPECT_FALSE(layout_from_json(read_text_file(layout)).files.empty());
    for (std::string mode : {"seq", "multicore"}) {
      auto report = d.file("r_" + c + "_" + mode + ".json");
      o = qca_run("run --layout " + q(layout) + " --mode " + mode + " --workers 2 --report " + q(report) + " --csv " +
                  q(d.file("r.csv")));
      ASSERT_EQ(o.code, 0) << o.text;
      auto r = read_report(report);
      EXPECT_TRUE(r.complete);
      EXPECT_EQ(r.case_id, c);
      EXPECT_EQ(r.mode, mode);
      EXPECT_EQ(r.qet_us.size(), 12u);
    }
  }
  o = qca_run("compare --reports " + q(d.file("r_V_seq.json")) + " " + q(d.file("r_WA_seq.json")));
  EXPECT_EQ(o.code, 0) << o.text;
  EXPECT_NE(o.text.find("r_WA_seq"), std::string::npos);

  // case III plans but cannot run
  auto l3 = d.file("layout_III.json");
  ASSERT_EQ(qca_run("plan --plan " + q(d.file("plan.json")) + " --case III --out " + q(l3)).code, 0);
  ASSERT_EQ(qca_run("materialize --layout " + q(l3) + " --source " + q(data + "/PhotoPrimary.csv") + " --out " +
                    q(d.file("frag_III")))
                .code,
            0);
  o = qca_run("run --layout " + q(l3) + " --report " + q(d.file("r3.json")));
  EXPECT_NE(o.code, 0);
  EXPECT_NE(o.text.find("CaseNotExecutable"), std::string::npos) << o.text;

  // two-node layouts need multinode mode
  auto l2 = d.file("layout_V2.json");
  ASSERT_EQ(qca_run("plan --plan " + q(d.file("plan.json")) + " --case V --nodes 2 --out " + q(l2)).code, 0);
  ASSERT_EQ(qca_run("materialize --layout " + q(l2) + " --source " + q(data + "/PhotoPrimary.csv") + " --out " +
                    q(d.file("frag_V2")))
                .code,
            0);
  o = qca_run("run --layout " + q(l2) + " --mode multinode --report " + q(d.file("r2.json")));
  EXPECT_EQ(o.code, 0) << o.text;
  EXPECT_EQ(read_report(d.file("r2.json")).per_node.size(), 2u);
  EXPECT_EQ(qca_run("run --layout " + q(l2) + " --mode seq --report " + q(d.file("r2s.json"))).code, 3);
}

TEST(Cli, ConfigFile) {
  TempDir d;
  spit(d.file("gen.ini"), "[gen-data]\nrows=50\ncolumns=12\nno-workload=true\n");
  auto o = qca_run("--config " + q(d.file("gen.ini")) + " gen-data --out " + q(d.file("g")));
  ASSERT_EQ(o.code, 0) << o.text;
  auto csv = slurp(d.file("g/PhotoPrimary.csv"));
  EXPECT_EQ(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')), 51u);
}
