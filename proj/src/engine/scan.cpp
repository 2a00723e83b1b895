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

#include "scan.hpp"

#include "qca/error.hpp"

namespace qca::detail {

namespace {

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

}  // namespace

TableDef fragment_table(CsvSpec& spec, const TableDef& table) {
  if (!spec.has_header) throw Error(Errc::HeaderMismatch, spec.path + ": fragment files must carry a header row");
  auto header = read_csv_header(spec.path, spec.delimiter);
  if (header.empty()) throw Error(Errc::HeaderMismatch, spec.path + ": file is empty, expected a header row");
  if (spec.columns.empty()) spec.columns = header;
  bool same = header.size() == spec.columns.size();
  for (size_t i = 0; same && i < header.size(); ++i) same = iequals(header[i], spec.columns[i]);
  if (!same)
    throw Error(Errc::HeaderMismatch, spec.path + ": header is [" + joined(header) + "], expected [" +
                                          joined(spec.columns) + "]");
  TableDef out;
  out.name = table.name;
  for (const auto& h : header) {
    const auto* def = table.find(h);
    if (!def) throw Error(Errc::HeaderMismatch, spec.path + ": column '" + h + "' is not an attribute of " + table.name);
    for (const auto& seen : out.attributes)
      if (seen.name == def->name) throw Error(Errc::HeaderMismatch, spec.path + ": column '" + h + "' repeats");
    out.attributes.push_back(*def);
  }
  return out;
}

ScanOutput scan_columns(const CsvSpec& spec, const TableDef& file_table, const std::vector<size_t>& positions) {
  CsvReader reader(spec.path, spec.delimiter, spec.has_header);
  const size_t arity = file_table.attributes.size();
  ScanOutput out;
  for (size_t p : positions) out.columns.emplace_back(file_table.attributes[p].type);
  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    if (fields.size() != arity)
      throw Error(Errc::RowArityMismatch, spec.path + ": row " + std::to_string(reader.row_number()) + " has " +
                                              std::to_string(fields.size()) + " fields, expected " +
                                              std::to_string(arity));
    for (size_t c = 0; c < positions.size(); ++c) {
      if (!out.columns[c].append_field(fields[positions[c]])) {
        const auto& def = file_table.attributes[positions[c]];
        throw Error(Errc::ParseError, spec.path + ": row " + std::to_string(reader.row_number()) + ", column '" +
                                          def.name + "': '" + std::string(fields[positions[c]]) + "' is not a valid " +
                                          std::string(type_name(def.type)));
      }
    }
  }
  out.rows = reader.row_number();
  out.bytes = reader.bytes_read();
  return out;
}

}  // namespace qca::detail
