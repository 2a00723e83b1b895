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

// Delimited text files without quoting: a field never contains the
// delimiter or a newline. An empty field is NULL.

#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace qca {

struct CsvSpec {
  std::string path;
  char delimiter = ';';
  bool has_header = true;
  std::vector<std::string> columns;

  bool operator==(const CsvSpec&) const = default;
};

/// Sequential row reader. Field views stay valid until the next call to
/// next(). Throws IoFailure when the file cannot be opened or read.
class CsvReader {
 public:
  CsvReader(const std::string& path, char delimiter, bool has_header = true);
  ~CsvReader();
  CsvReader(const CsvReader&) = delete;
  CsvReader& operator=(const CsvReader&) = delete;

  /// Empty when the file has no header or is empty.
  const std::vector<std::string>& header() const noexcept { return header_; }

  /// Reads the next data row; returns false at end of file.
  bool next(std::vector<std::string_view>& fields);

  /// 1-based number of the last row returned by next(), header excluded.
  uint64_t row_number() const noexcept { return rows_; }
  /// Bytes pulled from the file so far.
  uint64_t bytes_read() const noexcept { return bytes_read_; }

 private:
  bool fill();
  bool read_line(std::vector<std::string_view>& fields);

  std::string path_;
  std::FILE* file_ = nullptr;
  char delim_;
  std::vector<char> buf_;
  size_t pos_ = 0;  // start of unconsumed data
  size_t end_ = 0;  // end of valid data
  std::vector<uint32_t> seps_;
  size_t sep_i_ = 0;
  bool eof_ = false;
  uint64_t rows_ = 0;
  uint64_t bytes_read_ = 0;
  std::vector<std::string> header_;
};

/// Reads only the header line.
std::vector<std::string> read_csv_header(const std::string& path, char delimiter);

/// Buffered row writer. Throws IoFailure.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, char delimiter);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void write_row(const std::vector<std::string_view>& fields);
  void write_row(const std::vector<std::string>& fields);
  /// Appends a preformatted row; a newline is added.
  void write_line(std::string_view line);
  /// Flushes and closes; errors surface here rather than in the destructor.
  void close();

 private:
  void put(std::string_view s);

  std::string path_;
  std::FILE* file_ = nullptr;
  char delim_;
  std::string out_;
};

}  // namespace qca
