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

#include "qca/materializer.hpp"

#include <filesystem>
#include <memory>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qca/error.hpp"

namespace qca {

namespace {

void check_source_header(const CsvSpec& source, const std::vector<std::string>& header, const TableDef& def) {
  bool same = header.size() == def.attributes.size();
  for (size_t i = 0; same && i < header.size(); ++i) same = iequals(header[i], def.attributes[i].name);
  if (!same) {
    std::string got;
    for (size_t i = 0; i < header.size(); ++i) got += (i ? "," : "") + header[i];
    throw Error(Errc::HeaderMismatch, "source '" + source.path + "' header [" + got + "] does not match table " +
                                          def.name + " (" + std::to_string(def.attributes.size()) + " columns)");
  }
}

// Source header, or the schema order when the file has none.
std::vector<std::string> source_header(const CsvSpec& source, const TableDef& def) {
  if (source.has_header) {
    auto h = read_csv_header(source.path, source.delimiter);
    check_source_header(source, h, def);
    return h;
  }
  if (!source.columns.empty()) check_source_header(source, source.columns, def);
  std::vector<std::string> h;
  for (const auto& a : def.attributes) h.push_back(a.name);
  return h;
}

std::string join_key(const std::vector<std::string_view>& fields, const std::vector<size_t>& pos) {
  std::string k;
  for (size_t i = 0; i < pos.size(); ++i) {
    if (i) k.push_back(',');
    k.append(fields[pos[i]]);
  }
  return k;
}

}  // namespace

FragmentFiles split(const CsvSpec& source, const PartitionLayout& layout, const SchemaCatalog& schema,
                    const std::string& out_dir, const std::string& table) {
  std::string target = table;
  if (target.empty()) {
    std::set<std::string> tables;
    for (const auto& f : layout.fragments) tables.insert(f.table);
    if (tables.size() != 1)
      throw Error(Errc::InvalidArgument, "layout covers " + std::to_string(tables.size()) +
                                             " tables; name the one the source holds");
    target = *tables.begin();
  }
  const TableDef& def = schema.at(target);
  const auto header = source_header(source, def);

  struct Output {
    std::string file;
    std::vector<size_t> positions;
    std::unique_ptr<CsvWriter> writer;
  };
  std::vector<Output> outputs;
  std::map<std::string, size_t> by_file;
  std::map<std::string, std::vector<std::string>> file_columns;
  FragmentFiles result;
  std::filesystem::create_directories(out_dir);

  for (const auto& f : layout.fragments) {
    if (!iequals(f.table, def.name)) continue;
    const std::string stem = f.file.empty() ? f.name : f.file;
    auto cols = f.column_order(schema);
    auto [it, fresh] = file_columns.emplace(stem, cols);
    if (!fresh && it->second != cols)
      throw Error(Errc::InvalidArgument, "fragments sharing file '" + stem + "' hold different attributes");
    CsvSpec spec;
    spec.path = (std::filesystem::path(out_dir) / (stem + ".csv")).string();
    spec.delimiter = source.delimiter;
    spec.has_header = true;
    spec.columns = cols;
    result[f.name] = spec;
    if (!fresh) continue;
    Output o;
    o.file = spec.path;
    for (const auto& c : cols) o.positions.push_back(def.index_of(c));
    by_file[stem] = outputs.size();
    outputs.push_back(std::move(o));
  }

  for (auto& o : outputs) {
    o.writer = std::make_unique<CsvWriter>(o.file, source.delimiter);
    std::vector<std::string_view> names;
    for (size_t p : o.positions) names.push_back(def.attributes[p].name);
    o.writer->write_row(names);
  }

  CsvReader reader(source.path, source.delimiter, source.has_header);
  std::vector<std::string_view> fields;
  std::string line;
  while (reader.next(fields)) {
    if (fields.size() != header.size())
      throw Error(Errc::RowArityMismatch, "source '" + source.path + "' row " + std::to_string(reader.row_number()) +
                                              " has " + std::to_string(fields.size()) + " fields, expected " +
                                              std::to_string(header.size()));
    for (auto& o : outputs) {
      line.clear();
      for (size_t i = 0; i < o.positions.size(); ++i) {
        if (i) line.push_back(source.delimiter);
        line.append(fields[o.positions[i]]);
      }
      o.writer->write_line(line);
    }
  }
  for (auto& o : outputs) o.writer->close();
  return result;
}

SplitReport verify_split(const CsvSpec& source, const TableDef& table, const FragmentFiles& fragments) {
  SplitReport report;
  const auto header = source_header(source, table);
  std::vector<size_t> source_key;
  for (size_t i = 0; i < table.attributes.size(); ++i)
    if (table.attributes[i].primary_key) source_key.push_back(i);

  auto note = [](std::vector<SplitMismatch>& list, SplitMismatch m) {
    if (list.size() < SplitReport::kMaxListed) list.push_back(std::move(m));
  };

  // Replicas share a file; check each file once.
  std::map<std::string, std::string> files;
  for (const auto& [name, spec] : fragments) files.emplace(spec.path, name);

  bool counted_rows = false;
  for (const auto& [path, name] : files) {
    const CsvSpec& spec = fragments.at(name);
    std::vector<std::string> cols;
    try {
      cols = spec.has_header ? read_csv_header(spec.path, spec.delimiter) : spec.columns;
    } catch (const Error& e) {
      ++report.mismatched_rows;
      note(report.mismatches, {name, "", "", "readable file", e.what()});
      continue;
    }
    // Map fragment columns onto source positions.
    std::vector<size_t> src_pos, frag_key;
    bool bad_header = false;
    for (size_t i = 0; i < cols.size(); ++i) {
      size_t p = table.index_of(cols[i]);
      if (p == static_cast<size_t>(-1)) {
        bad_header = true;
        note(report.mismatches, {name, "", cols[i], "a source attribute", cols[i]});
        break;
      }
      src_pos.push_back(p);
    }
    for (size_t k : source_key) {
      bool found = false;
      for (size_t i = 0; i < src_pos.size(); ++i)
        if (src_pos[i] == k) {
          frag_key.push_back(i);
          found = true;
        }
      if (!found) {
        bad_header = true;
        note(report.mismatches, {name, "", table.attributes[k].name, "key column", "absent"});
      }
    }
    if (bad_header) {
      ++report.mismatched_rows;
      continue;
    }

    std::unordered_map<std::string, std::vector<std::string>> rows;
    {
      CsvReader r(spec.path, spec.delimiter, spec.has_header);
      std::vector<std::string_view> f;
      while (r.next(f)) {
        if (f.size() != cols.size()) {
          ++report.mismatched_rows;
          note(report.mismatches, {name, "row " + std::to_string(r.row_number()), "",
                                   std::to_string(cols.size()) + " fields", std::to_string(f.size()) + " fields"});
          continue;
        }
        auto [it, fresh] = rows.emplace(join_key(f, frag_key), std::vector<std::string>(f.begin(), f.end()));
        if (!fresh) {
          ++report.extra_count;
          note(report.extra, {name, it->first, "", "unique key", "repeated"});
        }
      }
    }

    CsvReader r(source.path, source.delimiter, source.has_header);
    std::vector<std::string_view> f;
    uint64_t n = 0;
    while (r.next(f)) {
      ++n;
      if (f.size() != header.size()) continue;  // split rejects these rows; nothing to compare
      std::string key = join_key(f, source_key);
      auto it = rows.find(key);
      if (it == rows.end()) {
        ++report.missing_count;
        note(report.missing, {name, key, "", "present", "missing"});
        continue;
      }
      bool row_bad = false;
      for (size_t i = 0; i < src_pos.size(); ++i) {
        ++report.cells_checked;
        if (f[src_pos[i]] != it->second[i]) {
          if (!row_bad) note(report.mismatches, {name, key, cols[i], std::string(f[src_pos[i]]), it->second[i]});
          row_bad = true;
        }
      }
      report.mismatched_rows += row_bad;
      rows.erase(it);
    }
    if (!counted_rows) report.source_rows = n;
    counted_rows = true;
    for (const auto& [key, _] : rows) {
      ++report.extra_count;
      note(report.extra, {name, key, "", "absent", "present"});
    }
  }
  return report;
}

std::string describe_split_report(const SplitReport& r) {
  std::ostringstream out;
  out << "verify: " << r.source_rows << " source rows, " << r.cells_checked << " cells checked, "
      << r.mismatched_rows << " mismatched rows, " << r.missing_count << " missing keys, " << r.extra_count
      << " extra keys -> " << (r.ok() ? "OK" : "FAILED") << '\n';
  auto list = [&](const char* what, const std::vector<SplitMismatch>& v) {
    for (const auto& m : v)
      out << "  " << what << ' ' << m.fragment << " key=" << m.key << (m.attribute.empty() ? "" : " " + m.attribute)
          << ": expected '" << m.expected << "' got '" << m.actual << "'\n";
  };
  list("mismatch", r.mismatches);
  list("missing", r.missing);
  list("extra", r.extra);
  return out.str();
}

}  // namespace qca
