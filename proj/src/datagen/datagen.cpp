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

#include "qca/datagen.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qca/error.hpp"
#include "qca/ingest.hpp"
#include "qca/query.hpp"

namespace qca {

namespace {

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

uint64_t below(std::mt19937_64& rng, uint64_t n) { return n ? rng() % n : 0; }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

void append_number(std::string& out, double d) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  out.append(buf, res.ptr);
}

void append_number(std::string& out, int64_t i) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), i);
  out.append(buf, res.ptr);
}

std::string ddl_type(TypeTag t) {
  switch (t) {
    case TypeTag::Int: return "BIGINT";
    case TypeTag::Float: return "DOUBLE PRECISION";
    case TypeTag::Text: return "VARCHAR(64)";
  }
  return "?";
}

std::string column_name(size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "c%03zu", i);
  return buf;
}

}  // namespace

TableDef generated_table_def(const TableProfile& p) {
  if (p.columns < 2) throw Error(Errc::InvalidArgument, "a generated table needs at least 2 columns");
  const size_t generic = p.columns >= 3 ? p.columns - 3 : 0;
  if (p.int_columns + p.text_columns > generic)
    throw Error(Errc::InvalidArgument, "int and text columns exceed the " + std::to_string(generic) +
                                           " generic columns available");
  TableDef t;
  t.name = p.table;
  t.attributes.push_back({p.key, TypeTag::Int, true});
  t.attributes.push_back({"ra", TypeTag::Float, false});
  if (p.columns >= 3) t.attributes.push_back({"dec", TypeTag::Float, false});
  for (size_t i = 3; i < p.columns; ++i) {
    size_t g = i - 3;
    TypeTag type = g < p.int_columns ? TypeTag::Int : (g >= generic - p.text_columns ? TypeTag::Text : TypeTag::Float);
    t.attributes.push_back({column_name(i), type, false});
  }
  return t;
}

ValueRange generated_range(const AttributeDef& a, uint64_t rows) {
  if (a.primary_key) return {0, static_cast<double>(rows)};
  if (iequals(a.name, "ra")) return {0, 360};
  if (iequals(a.name, "dec")) return {-90, 90};
  if (a.type == TypeTag::Int) return {0, 1000000};
  return {0, 1000};
}

GeneratedTable gen_table(const TableProfile& p, const std::string& dir) {
  TableDef def = generated_table_def(p);
  std::filesystem::create_directories(dir);

  std::ostringstream ddl;
  ddl << "CREATE TABLE " << def.name << " (\n";
  for (size_t i = 0; i < def.attributes.size(); ++i) {
    const auto& a = def.attributes[i];
    ddl << "  " << a.name << ' ' << ddl_type(a.type) << (a.primary_key ? " PRIMARY KEY" : "")
        << (i + 1 < def.attributes.size() ? ",\n" : "\n");
  }
  ddl << ");\n";

  GeneratedTable out;
  out.ddl = ddl.str();
  out.schema = extract_schema(out.ddl);
  out.csv.path = (std::filesystem::path(dir) / (def.name + ".csv")).string();
  out.csv.delimiter = p.delimiter;
  out.csv.has_header = true;
  for (const auto& a : def.attributes) out.csv.columns.push_back(a.name);

  {
    std::ofstream f(std::filesystem::path(dir) / "schema.sql", std::ios::binary);
    f << out.ddl;
    if (!f) throw Error(Errc::IoFailure, "cannot write schema.sql in '" + dir + "'");
  }

  // Per-column integer grids: value = m / 10^4 keeps printed decimals short.
  struct Gen {
    TypeTag type;
    int64_t lo, span;  // in units of 1e-4 for floats
  };
  std::vector<Gen> gens;
  for (const auto& a : def.attributes) {
    ValueRange r = generated_range(a, p.rows);
    if (a.type == TypeTag::Float)
      gens.push_back({a.type, static_cast<int64_t>(r.lo * 10000), static_cast<int64_t>((r.hi - r.lo) * 10000)});
    else
      gens.push_back({a.type, static_cast<int64_t>(r.lo), static_cast<int64_t>(r.hi - r.lo)});
  }

  std::mt19937_64 rng(p.seed);
  CsvWriter w(out.csv.path, p.delimiter);
  w.write_row(out.csv.columns);
  std::string line;
  for (uint64_t row = 0; row < p.rows; ++row) {
    line.clear();
    append_number(line, static_cast<int64_t>(row));
    for (size_t c = 1; c < gens.size(); ++c) {
      line.push_back(p.delimiter);
      if (p.null_fraction > 0 && unit(rng) < p.null_fraction) continue;
      const Gen& g = gens[c];
      switch (g.type) {
        case TypeTag::Float:
          append_number(line, static_cast<double>(g.lo + static_cast<int64_t>(below(rng, g.span))) / 10000.0);
          break;
        case TypeTag::Int:
          append_number(line, g.lo + static_cast<int64_t>(below(rng, g.span)));
          break;
        case TypeTag::Text:
          for (size_t k = 0; k < p.text_width; ++k) line.push_back(static_cast<char>('a' + below(rng, 26)));
          break;
      }
    }
    w.write_line(line);
  }
  w.close();
  return out;
}

std::vector<PatternEntry> sky_pattern(size_t simple_attributes, size_t complex_attributes) {
  const int types[] = {1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 1, 1};
  std::vector<PatternEntry> out;
  for (int i = 0; i < 12; ++i)
    out.push_back({"Q" + std::to_string(i + 1), types[i], types[i] ? complex_attributes : simple_attributes});
  return out;
}

namespace {

// Picks the attribute lists of one query type.
std::vector<std::vector<std::string>> allocate(const std::vector<size_t>& counts, const std::vector<std::string>& own,
                                               const std::vector<std::string>& cap, size_t cap_min,
                                               std::mt19937_64& rng, const char* type_name) {
  const size_t n = counts.size();
  std::vector<size_t> oq(n), kq(n);
  size_t sum_o = 0, sum_k = 0;
  const size_t cmin = cap.empty() ? 0 : cap_min;
  for (size_t i = 0; i < n; ++i) {
    if (counts[i] == 0)
      throw Error(Errc::InfeasiblePattern, std::string(type_name) + " query with zero attributes");
    if (counts[i] < cmin)
      throw Error(Errc::InfeasiblePattern, std::string(type_name) + " query reads " + std::to_string(counts[i]) +
                                               " attributes but must read at least " + std::to_string(cmin) +
                                               " common attributes");
    if (counts[i] > own.size() + cap.size())
      throw Error(Errc::InfeasiblePattern, std::string(type_name) + " query reads " + std::to_string(counts[i]) +
                                               " attributes but only " + std::to_string(own.size() + cap.size()) +
                                               " are available to it");
    oq[i] = std::min(counts[i] - cmin, own.size());
    kq[i] = counts[i] - oq[i];
    if (kq[i] > cap.size())
      throw Error(Errc::InfeasiblePattern, std::string(type_name) + " query needs more common attributes than exist");
    sum_o += oq[i];
    sum_k += kq[i];
  }
  if (sum_o < own.size())
    throw Error(Errc::InfeasiblePattern, std::string(type_name) + " queries have " + std::to_string(sum_o) +
                                             " attribute slots for a pool of " + std::to_string(own.size()));
  // Move spare own slots to the CAP until every common attribute fits.
  for (size_t i = 0; sum_k < cap.size() && sum_o > own.size(); i = (i + 1) % n) {
    if (oq[i] == 0 || kq[i] >= cap.size()) {
      bool any = false;
      for (size_t j = 0; j < n; ++j) any |= oq[j] > 0 && kq[j] < cap.size();
      if (!any) break;
      continue;
    }
    --oq[i];
    ++kq[i];
    --sum_o;
    ++sum_k;
  }
  if (sum_k < cap.size())
    throw Error(Errc::InfeasiblePattern, std::string(type_name) + " queries cannot cover all " +
                                             std::to_string(cap.size()) + " common attributes");

  std::vector<std::vector<std::string>> out(n);
  auto fill = [&](const std::vector<std::string>& pool, const std::vector<size_t>& quota) {
    std::vector<size_t> used(n, 0);
    // Cover the pool round-robin, then top up with random distinct picks.
    size_t q = 0;
    for (const auto& attr : pool) {
      while (used[q] >= quota[q]) q = (q + 1) % n;
      out[q].push_back(attr);
      ++used[q];
      q = (q + 1) % n;
    }
    for (size_t i = 0; i < n; ++i) {
      std::vector<std::string> rest;
      for (const auto& a : pool)
        if (std::find(out[i].begin(), out[i].end(), a) == out[i].end()) rest.push_back(a);
      shuffle(rest, rng);
      for (size_t k = 0; used[i] < quota[i]; ++k, ++used[i]) out[i].push_back(rest[k]);
    }
  };
  fill(own, oq);
  fill(cap, kq);
  for (auto& attrs : out) shuffle(attrs, rng);
  return out;
}

std::string literal_for(const AttributeDef& a, std::mt19937_64& rng) {
  if (a.type == TypeTag::Text) return "'" + std::string(1, static_cast<char>('a' + below(rng, 20))) + "'";
  ValueRange r = generated_range(a, 0);
  double x = r.lo + (r.hi - r.lo) * 0.5 * unit(rng);
  std::string out;
  if (a.type == TypeTag::Int)
    append_number(out, static_cast<int64_t>(x));
  else
    append_number(out, static_cast<double>(static_cast<int64_t>(x * 100)) / 100.0);
  if (a.type == TypeTag::Float && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string build_query(const TableDef& t, const std::string& key, const std::vector<std::string>& attrs, bool complex,
                        std::mt19937_64& rng) {
  const bool aggregate = below(rng, 3) == 0;
  const size_t npred = attrs.size() >= 3 ? 2 : (attrs.size() == 2 ? 1 : 0);
  std::vector<std::string> preds(attrs.begin(), attrs.begin() + static_cast<std::ptrdiff_t>(npred));
  std::vector<std::string> cols(attrs.begin() + static_cast<std::ptrdiff_t>(npred), attrs.end());

  // Complex queries alternate attributes between the two instances.
  auto ref = [&](const std::string& a, size_t i) { return complex ? std::string(i % 2 ? "q." : "p.") + a : a; };

  std::string sql = "SELECT ";
  if (aggregate) {
    sql += "COUNT(*)";
    const AggFunc numeric[] = {AggFunc::Avg, AggFunc::Min, AggFunc::Max, AggFunc::Count};
    for (size_t i = 0; i < cols.size(); ++i) {
      AggFunc f = numeric[i % 4];
      if (f == AggFunc::Avg && t.find(cols[i])->type == TypeTag::Text) f = AggFunc::Max;
      sql += ", " + std::string(agg_name(f)) + "(" + ref(cols[i], i) + ")";
    }
  } else {
    sql += complex ? "p." + key : key;
    for (size_t i = 0; i < cols.size(); ++i) sql += ", " + ref(cols[i], i);
  }
  sql += complex ? " FROM " + t.name + " p, " + t.name + " q" : " FROM " + t.name;
  std::vector<std::string> conds;
  if (complex) conds.push_back("p." + key + " = q." + key);
  for (size_t i = 0; i < preds.size(); ++i)
    conds.push_back(ref(preds[i], i + 1) + " > " + literal_for(*t.find(preds[i]), rng));
  for (size_t i = 0; i < conds.size(); ++i) sql += (i ? " AND " : " WHERE ") + conds[i];
  if (!aggregate) sql += " LIMIT 100";
  return sql + ";";
}

}  // namespace

GeneratedWorkload gen_workload(const SchemaCatalog& schema, const WorkloadProfile& p) {
  if (schema.empty()) throw Error(Errc::InvalidArgument, "cannot generate a workload for an empty schema");
  const TableDef& t = p.table.empty() ? schema.tables().front() : schema.at(p.table);
  auto keys = t.key_names();
  const std::string key = keys.front();

  std::vector<std::string> non_key;
  for (const auto& a : t.attributes)
    if (!a.primary_key) non_key.push_back(a.name);

  std::mt19937_64 rng(p.seed);
  std::vector<size_t> simple_counts, complex_counts;
  std::vector<size_t> simple_idx, complex_idx;
  for (size_t i = 0; i < p.pattern.size(); ++i) {
    const auto& e = p.pattern[i];
    if (e.type != 0 && e.type != 1)
      throw Error(Errc::InfeasiblePattern, "query " + e.id + " has type " + std::to_string(e.type) + ", expected 0 or 1");
    (e.type ? complex_counts : simple_counts).push_back(e.attributes);
    (e.type ? complex_idx : simple_idx).push_back(i);
  }
  const bool has_simple = !simple_counts.empty(), has_complex = !complex_counts.empty();
  const size_t n_cap = has_simple && has_complex ? p.cap_pool : 0;
  const size_t n_simple = has_simple ? p.simple_pool : 0;
  const size_t n_complex = has_complex ? p.complex_pool : 0;
  if (n_cap + n_simple + n_complex > non_key.size())
    throw Error(Errc::InfeasiblePattern, "pools need " + std::to_string(n_cap + n_simple + n_complex) +
                                             " attributes but " + t.name + " has " + std::to_string(non_key.size()) +
                                             " non-key attributes");

  shuffle(non_key, rng);
  std::vector<std::string> cap(non_key.begin(), non_key.begin() + static_cast<std::ptrdiff_t>(n_cap));
  std::vector<std::string> simple(non_key.begin() + static_cast<std::ptrdiff_t>(n_cap),
                                  non_key.begin() + static_cast<std::ptrdiff_t>(n_cap + n_simple));
  std::vector<std::string> complex(non_key.begin() + static_cast<std::ptrdiff_t>(n_cap + n_simple),
                                   non_key.begin() + static_cast<std::ptrdiff_t>(n_cap + n_simple + n_complex));

  std::vector<std::vector<std::string>> attrs(p.pattern.size());
  if (has_simple) {
    auto a = allocate(simple_counts, simple, cap, p.cap_per_query, rng, "simple");
    for (size_t i = 0; i < a.size(); ++i) attrs[simple_idx[i]] = std::move(a[i]);
  }
  if (has_complex) {
    auto a = allocate(complex_counts, complex, cap, p.cap_per_query, rng, "complex");
    for (size_t i = 0; i < a.size(); ++i) attrs[complex_idx[i]] = std::move(a[i]);
  }

  GeneratedWorkload out;
  for (const auto& a : cap) out.cap.insert({t.name, a});
  for (const auto& a : simple) out.simple_only.insert({t.name, a});
  for (const auto& a : complex) out.complex_only.insert({t.name, a});

  std::string text = "# task_id<TAB>statement\n";
  if (p.include_load) {
    text += "TRUN\tTRUNCATE TABLE " + t.name + ";\n";
    text += "COPY\tCOPY " + t.name + " FROM '" + p.load_path + "' WITH (DELIMITER ';');\n";
  }
  for (size_t i = 0; i < p.pattern.size(); ++i)
    text += p.pattern[i].id + "\t" + build_query(t, key, attrs[i], p.pattern[i].type == 1, rng) + "\n";
  out.text = std::move(text);
  return out;
}

}  // namespace qca
