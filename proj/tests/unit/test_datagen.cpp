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

#include <sstream>

#include "qca/datagen.hpp"
#include "qca/error.hpp"
#include "qca/ingest.hpp"
#include "qca/partitioner.hpp"
#include "support/rng.hpp"

using namespace qca;
using namespace qca::testing;

namespace {

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ';')
      out.emplace_back();
    else
      out.back() += c;
  }
  return out;
}

SchemaCatalog sky(size_t columns = 100) {
  TableProfile tp;
  tp.columns = columns;
  SchemaCatalog s;
  s.add_table(generated_table_def(tp));
  return s;
}

}  // namespace

TEST(Table, Definition) {
  TableProfile tp;
  tp.columns = 8;
  tp.int_columns = 2;
  tp.text_columns = 1;
  auto t = generated_table_def(tp);
  ASSERT_EQ(t.attributes.size(), 8u);
  EXPECT_EQ(t.key_names(), (std::vector<std::string>{"objID"}));
  EXPECT_EQ(t.attributes[1].name, "ra");
  EXPECT_EQ(t.attributes[2].name, "dec");
  EXPECT_EQ(t.attributes[3].type, TypeTag::Int);
  EXPECT_EQ(t.attributes[4].type, TypeTag::Int);
  EXPECT_EQ(t.attributes[5].type, TypeTag::Float);
  EXPECT_EQ(t.attributes[7].type, TypeTag::Text);
  tp.columns = 1;
  EXPECT_THROW(generated_table_def(tp), Error);
  tp.columns = 5;
  tp.int_columns = 2;
  tp.text_columns = 2;
  EXPECT_THROW(generated_table_def(tp), Error);
}

TEST(Table, FilesAreDeterministicAndInRange) {
  TempDir a, b;
  TableProfile tp;
  tp.columns = 10;
  tp.rows = 500;
  tp.int_columns = 2;
  tp.text_columns = 2;
  tp.null_fraction = 0.2;
  auto ga = gen_table(tp, a.path().string());
  auto gb = gen_table(tp, b.path().string());
  EXPECT_EQ(slurp(ga.csv.path), slurp(gb.csv.path));
  EXPECT_EQ(ga.schema, extract_schema(slurp(a.file("schema.sql"))));
  EXPECT_EQ(ga.ddl, gb.ddl);

  std::istringstream in(slurp(ga.csv.path));
  std::string line;
  std::getline(in, line);
  const auto& def = ga.schema.at(tp.table);
  std::vector<std::string> header;
  for (const auto& at : def.attributes) header.push_back(at.name);
  EXPECT_EQ(fields(line), header);
  uint64_t row = 0, nulls = 0, cells = 0;
  while (std::getline(in, line)) {
    auto f = fields(line);
    ASSERT_EQ(f.size(), def.attributes.size());
    EXPECT_EQ(f[0], std::to_string(row));
    for (size_t c = 1; c < f.size(); ++c) {
      ++cells;
      if (f[c].empty()) {
        ++nulls;
        continue;
      }
      const auto& attr = def.attributes[c];
      if (attr.type == TypeTag::Text) {
        EXPECT_EQ(f[c].size(), tp.text_width);
        continue;
      }
      auto r = generated_range(attr, tp.rows);
      double v = std::stod(f[c]);
      EXPECT_GE(v, r.lo) << attr.name;
      EXPECT_LT(v, r.hi) << attr.name;
      if (attr.type == TypeTag::Int) { EXPECT_EQ(f[c].find('.'), std::string::npos); }
    }
    ++row;
  }
  EXPECT_EQ(row, tp.rows);
  double frac = static_cast<double>(nulls) / static_cast<double>(cells);
  EXPECT_NEAR(frac, 0.2, 0.03);

  tp.seed = 43;
  TempDir c;
  EXPECT_NE(slurp(gen_table(tp, c.path().string()).csv.path), slurp(ga.csv.path));
}

TEST(Pattern, TwelveQueries) {
  auto p = sky_pattern();
  ASSERT_EQ(p.size(), 12u);
  std::vector<int> types;
  for (const auto& e : p) types.push_back(e.type);
  EXPECT_EQ(types, (std::vector<int>{1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1}));
  EXPECT_EQ(p[7].id, "Q8");
  EXPECT_EQ(p[0].attributes, 6u);
  EXPECT_EQ(p[1].attributes, 7u);
}

TEST(Workload, FollowsPatternAndPools) {
  auto schema = sky();
  WorkloadProfile wp;
  wp.pattern = sky_pattern();
  auto gw = gen_workload(schema, wp);
  EXPECT_EQ(gw.simple_only.size(), 20u);
  EXPECT_EQ(gw.complex_only.size(), 24u);
  EXPECT_EQ(gw.cap.size(), 10u);
  auto [w, q] = extract_workload(gw.text, schema);
  EXPECT_EQ(w.tasks.size(), 14u);
  EXPECT_EQ(w.tasks[0].kind, TaskKind::Truncate);
  EXPECT_EQ(w.tasks[1].kind, TaskKind::Load);
  auto types = qci(w, q);
  auto stripped = strip_keys(q, schema);
  for (const auto& e : wp.pattern) {
    EXPECT_EQ(types.at(e.id), e.type) << e.id;
    const auto& attrs = stripped.at(e.id).attributes;
    EXPECT_EQ(attrs.size(), e.attributes) << e.id;
    size_t in_cap = 0;
    for (const auto& a : attrs) {
      in_cap += gw.cap.count(a);
      const auto& wrong = e.type == 0 ? gw.complex_only : gw.simple_only;
      EXPECT_FALSE(wrong.count(a)) << e.id << " " << a.attribute;
    }
    EXPECT_GE(in_cap, wp.cap_per_query) << e.id;
  }
  // every pool attribute is used
  AttrSet used = workload_attributes(stripped);
  EXPECT_EQ(used.size(), 54u);
  EXPECT_EQ(gen_workload(schema, wp).text, gw.text);
}

TEST(Workload, Infeasible) {
  auto schema = sky(20);
  WorkloadProfile wp;
  wp.pattern = sky_pattern();
  try {
    gen_workload(schema, wp);  // 54 pool attributes do not fit 19 columns
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InfeasiblePattern);
  }
  auto big = sky();
  wp.pattern = {{"Q1", 0, 2}};  // 2 slots cannot cover 30 attributes
  EXPECT_THROW(gen_workload(big, wp), Error);
}

// Property: random feasible profiles keep the pattern and pool contract.
TEST(Property, RandomProfiles) {
  Rng rng(3);
  auto schema = sky();
  int feasible = 0;
  for (int iter = 0; iter < 200; ++iter) {
    WorkloadProfile wp;
    int n = static_cast<int>(rng.range(1, 15));
    for (int i = 1; i <= n; ++i)
      wp.pattern.push_back({"Q" + std::to_string(i), static_cast<int>(rng.range(0, 1)),
                            static_cast<size_t>(rng.range(2, 12))});
    wp.simple_pool = static_cast<size_t>(rng.range(0, 20));
    wp.complex_pool = static_cast<size_t>(rng.range(0, 20));
    wp.cap_pool = static_cast<size_t>(rng.range(0, 8));
    wp.cap_per_query = static_cast<size_t>(rng.range(0, 2));
    wp.seed = static_cast<uint64_t>(iter);
    wp.include_load = rng.chance(0.5);
    GeneratedWorkload gw;
    try {
      gw = gen_workload(schema, wp);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::InfeasiblePattern);
      continue;
    }
    ++feasible;
    auto [w, q] = extract_workload(gw.text, schema);
    auto types = qci(w, q);
    auto stripped = strip_keys(q, schema);
    for (const auto& e : wp.pattern) {
      ASSERT_EQ(types.at(e.id), e.type);
      ASSERT_EQ(stripped.at(e.id).attributes.size(), e.attributes) << e.id << "\n" << gw.text;
    }
    auto plan = partition(w, q, schema);
    AttrSet p0, p1;
    for (const auto& a : gw.simple_only) p0.insert(a);
    for (const auto& a : gw.complex_only) p1.insert(a);
    for (const auto& a : gw.cap) p0.insert(a), p1.insert(a);
    EXPECT_EQ(plan.qt_p0, p0);
    EXPECT_EQ(plan.qt_p1, p1);
    EXPECT_EQ(plan.cap, gw.cap);
  }
  EXPECT_GT(feasible, 20);
}
