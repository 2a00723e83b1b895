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

#include <functional>

#include "qca/error.hpp"
#include "qca/ingest.hpp"
#include "qca/query.hpp"
#include "support/generators.hpp"

using namespace qca;
using namespace qca::testing;

namespace {

SchemaCatalog photo_schema() {
  return extract_schema(
      "CREATE TABLE PhotoPrimary (objID BIGINT PRIMARY KEY, parentID BIGINT, ra DOUBLE, dec DOUBLE, name VARCHAR(8));"
      "CREATE TABLE SpecObj (specID BIGINT PRIMARY KEY, objID BIGINT, z DOUBLE);");
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::IoFailure;
}

}  // namespace

TEST(Parse, CountQueryFromWorkloadList) {
  auto q = parse_query("Select count(objID) from PhotoPrimary;");
  ASSERT_EQ(q.sources.size(), 1u);
  EXPECT_EQ(q.sources[0].table, "PhotoPrimary");
  ASSERT_EQ(q.projections.size(), 1u);
  const auto& agg = std::get<Aggregate>(q.projections[0]);
  EXPECT_EQ(agg.func, AggFunc::Count);
  ASSERT_TRUE(agg.arg);
  EXPECT_EQ(agg.arg->column, "objID");
}

TEST(Parse, RangeQueryWithLimit) {
  auto q = parse_query(
      "SELECT objID, ra,dec FROM PhotoPrimary WHERE ra > 185 and ra< 185.1 AND dec > 56.2 and dec < 56.3 limit 100;");
  EXPECT_EQ(q.projections.size(), 3u);
  ASSERT_EQ(q.predicates.size(), 4u);
  EXPECT_EQ(q.predicates[0].op, CompareOp::Gt);
  EXPECT_EQ(std::get<int64_t>(q.predicates[0].literal), 185);
  EXPECT_EQ(q.predicates[1].op, CompareOp::Lt);
  EXPECT_DOUBLE_EQ(std::get<double>(q.predicates[1].literal), 185.1);
  ASSERT_TRUE(q.limit);
  EXPECT_EQ(*q.limit, 100u);
}

TEST(Parse, LimitZeroIsLegal) {
  auto q = parse_query("SELECT a FROM t LIMIT 0");
  ASSERT_TRUE(q.limit);
  EXPECT_EQ(*q.limit, 0u);
}

TEST(Parse, SelfJoinHasTwoInstances) {
  auto q = parse_query("SELECT p.objID FROM PhotoPrimary p, PhotoPrimary q WHERE p.parentID = q.objID");
  auto inst = extract_tables(q);
  ASSERT_EQ(inst.size(), 2u);
  EXPECT_EQ(inst[0].table, "PhotoPrimary");
  EXPECT_EQ(inst[1].table, "PhotoPrimary");
  EXPECT_EQ(q.join_conditions.size(), 1u);
  EXPECT_TRUE(q.predicates.empty());
}

TEST(Parse, ExplicitJoinAndThreeWay) {
  auto q = parse_query(
      "SELECT a.x FROM t a JOIN t b ON a.id = b.id INNER JOIN u c ON b.id = c.id AND c.k = a.k WHERE a.x >= 'abc'");
  EXPECT_EQ(extract_tables(q).size(), 3u);
  EXPECT_EQ(q.join_conditions.size(), 3u);
  EXPECT_EQ(std::get<std::string>(q.predicates[0].literal), "abc");
}

TEST(Parse, KeywordsAreCaseInsensitiveIdentifiersPreserved) {
  auto q = parse_query("sElEcT MiXeD fRoM SomeTable wHeRe MiXeD <> -4");
  EXPECT_EQ(std::get<ColumnRef>(q.projections[0]).column, "MiXeD");
  EXPECT_EQ(q.sources[0].table, "SomeTable");
  EXPECT_EQ(q.predicates[0].op, CompareOp::Ne);
  EXPECT_EQ(std::get<int64_t>(q.predicates[0].literal), -4);
}

TEST(Parse, LiteralOnTheLeftIsFlipped) {
  auto q = parse_query("SELECT a FROM t WHERE 5 < a");
  ASSERT_EQ(q.predicates.size(), 1u);
  EXPECT_EQ(q.predicates[0].op, CompareOp::Gt);
  EXPECT_EQ(flip(CompareOp::Le), CompareOp::Ge);
  EXPECT_EQ(flip(CompareOp::Eq), CompareOp::Eq);
}

TEST(Parse, OutOfDialectConstructsAreNamed) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"SELECT a FROM t ORDER BY a", "ORDER BY"},
      {"SELECT a FROM t GROUP BY a", "GROUP BY"},
      {"SELECT a FROM (SELECT a FROM t)", "subquer"},
      {"SELECT a FROM t WHERE a = 1 OR a = 2", "OR"},
      {"SELECT a FROM t LEFT JOIN u ON t.a = u.a", "outer join"},
      {"SELECT DISTINCT a FROM t", "DISTINCT"},
      {"SELECT a, COUNT(*) FROM t", "GROUP BY"},
  };
  for (const auto& [sql, word] : cases) {
    try {
      parse_query(sql);
      ADD_FAILURE() << sql << " parsed";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::SyntaxError) << sql;
      EXPECT_NE(std::string(e.what()).find(word), std::string::npos) << sql << " -> " << e.what();
    }
  }
}

TEST(Parse, MalformedInputReportsPosition) {
  for (const char* sql : {"", "SELECT", "SELECT FROM t", "SELECT a FROM", "SELECT a FROM t WHERE", "SELECT a FROM t LIMIT -1",
                          "SELECT a FROM t WHERE a > 'open", "SELECT a FROM t extra tokens here", "UPDATE t SET a = 1"}) {
    EXPECT_EQ(code_of([&] { parse_query(sql); }), Errc::SyntaxError) << sql;
  }
}

TEST(Extract, AttributesOfWorkloadQueries) {
  auto s = photo_schema();
  EXPECT_EQ(extract_attributes(parse_query("Select count(objID) from PhotoPrimary"), s),
            (AttrSet{{"PhotoPrimary", "objID"}}));
  EXPECT_EQ(extract_attributes(
                parse_query("SELECT objID, ra,dec FROM PhotoPrimary WHERE ra > 185 and ra< 185.1 limit 100"), s),
            (AttrSet{{"PhotoPrimary", "objID"}, {"PhotoPrimary", "ra"}, {"PhotoPrimary", "dec"}}));
  EXPECT_TRUE(extract_attributes(parse_query("SELECT COUNT(*) FROM PhotoPrimary"), s).empty());
}

TEST(Extract, UsesSchemaSpellingAndJoinColumns) {
  auto s = photo_schema();
  auto a = extract_attributes(
      parse_query("select P.OBJID, s.z from photoprimary p, SpecObj s where p.objid = s.OBJID and Z > 0.5"), s);
  EXPECT_EQ(a, (AttrSet{{"PhotoPrimary", "objID"}, {"SpecObj", "objID"}, {"SpecObj", "z"}}));
}

TEST(Extract, ResolutionErrors) {
  auto s = photo_schema();
  EXPECT_EQ(code_of([&] { extract_attributes(parse_query("SELECT a FROM Nope"), s); }), Errc::UnknownTable);
  EXPECT_EQ(code_of([&] { extract_attributes(parse_query("SELECT nope FROM PhotoPrimary"), s); }),
            Errc::UnknownAttribute);
  EXPECT_EQ(code_of([&] { extract_attributes(parse_query("SELECT x.ra FROM PhotoPrimary p"), s); }),
            Errc::UnknownTable);
  try {
    extract_attributes(parse_query("SELECT objID FROM PhotoPrimary, SpecObj"), s);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AmbiguousColumn);
    std::string msg = e.what();
    EXPECT_NE(msg.find("objID"), std::string::npos);
    EXPECT_NE(msg.find("PhotoPrimary"), std::string::npos);
    EXPECT_NE(msg.find("SpecObj"), std::string::npos);
  }
}

TEST(Bind, TypeChecks) {
  auto s = photo_schema();
  EXPECT_EQ(code_of([&] { bind_query(parse_query("SELECT AVG(name) FROM PhotoPrimary"), s); }), Errc::TypeError);
  EXPECT_EQ(code_of([&] { bind_query(parse_query("SELECT ra FROM PhotoPrimary WHERE name > 3"), s); }),
            Errc::TypeError);
  EXPECT_EQ(code_of([&] { bind_query(parse_query("SELECT ra FROM PhotoPrimary WHERE ra > 'x'"), s); }),
            Errc::TypeError);
  EXPECT_EQ(code_of([&] {
              bind_query(parse_query("SELECT p.ra FROM PhotoPrimary p, PhotoPrimary q WHERE p.name = q.objID"), s);
            }),
            Errc::TypeError);
  auto b = bind_query(parse_query("SELECT p.ra, q.dec FROM PhotoPrimary p, PhotoPrimary q WHERE p.objID = q.parentID"), s);
  EXPECT_EQ(b.instance_tables.size(), 2u);
  EXPECT_EQ(b.projections[1].column->instance, 1u);
  EXPECT_EQ(b.attributes_of(0), (std::vector<std::string>{"ra", "objID"}));
  EXPECT_EQ(b.attributes_of(1), (std::vector<std::string>{"dec", "parentID"}));
}

TEST(Statements, Classification) {
  EXPECT_EQ(classify_statement("  select 1"), StatementKind::Query);
  EXPECT_EQ(classify_statement("TRUNCATE TABLE PhotoPrimary;"), StatementKind::Truncate);
  EXPECT_EQ(classify_statement("COPY PhotoPrimary FROM '/x.csv' (DELIMITER ';');"), StatementKind::Load);
  EXPECT_EQ(parse_truncate_target("TRUNCATE TABLE PhotoPrimary;"), "PhotoPrimary");
  EXPECT_EQ(parse_truncate_target("truncate PhotoPrimary"), "PhotoPrimary");
  EXPECT_EQ(parse_copy_target("COPY PhotoPrimary FROM '/...SDSS/PhotoPrimary.csv' (DELIMITER ';');"), "PhotoPrimary");
}

// Property: render then parse gives the same tree, and instance counts
// survive the trip.
TEST(Property, RenderParseRoundTrip) {
  Rng rng(1234);
  for (int iter = 0; iter < 1000; ++iter) {
    std::vector<TestTable> tables;
    for (int t = 0; t < 2; ++t) {
      TableShape shape;
      shape.rows = 5;
      shape.columns = static_cast<size_t>(rng.range(1, 6));
      tables.push_back(random_table(rng, "tab" + std::to_string(t), shape));
    }
    std::vector<const TestTable*> ptrs{&tables[0], &tables[1]};
    QueryAst q = random_query(rng, ptrs);
    std::string sql = render_query(q);
    QueryAst back = parse_query(sql);
    ASSERT_EQ(back, q) << sql;
    EXPECT_EQ(render_query(back), sql);
    EXPECT_EQ(extract_tables(back).size(), q.sources.size());

    SchemaCatalog schema;
    for (const auto& t : tables) schema.add_table(t.def);
    for (const auto& a : extract_attributes(back, schema)) {
      const TableDef* def = schema.find(a.table);
      ASSERT_NE(def, nullptr);
      EXPECT_NE(def->find(a.attribute), nullptr);
    }
  }
}
