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

#include "qca/csv.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>

#include "qca/error.hpp"
#include "qca/simd/kernels.hpp"

namespace qca {

namespace {

constexpr size_t kChunk = size_t{1} << 22;
constexpr size_t kFlushAt = size_t{1} << 20;

std::string errno_text() { return std::strerror(errno); }

}  // namespace

CsvReader::CsvReader(const std::string& path, char delimiter, bool has_header)
    : path_(path), delim_(delimiter), buf_(kChunk) {
  file_ = std::fopen(path.c_str(), "rb");
  if (!file_) throw Error(Errc::IoFailure, "cannot open '" + path + "': " + errno_text());
  if (has_header) {
    std::vector<std::string_view> fields;
    if (next(fields)) header_.assign(fields.begin(), fields.end());
    rows_ = 0;
  }
}

CsvReader::~CsvReader() {
  if (file_) std::fclose(file_);
}

bool CsvReader::fill() {
  // Drop consumed bytes, keeping the partial line at the front.
  const size_t offset = pos_;
  if (offset) {
    std::memmove(buf_.data(), buf_.data() + offset, end_ - offset);
    end_ -= offset;
    pos_ = 0;
    seps_.erase(seps_.begin(), seps_.begin() + static_cast<std::ptrdiff_t>(sep_i_));
    for (auto& s : seps_) s -= static_cast<uint32_t>(offset);
    sep_i_ = 0;
  }
  if (end_ == buf_.size()) buf_.resize(buf_.size() * 2);

  size_t n = std::fread(buf_.data() + end_, 1, buf_.size() - end_, file_);
  if (n == 0) {
    if (std::ferror(file_)) throw Error(Errc::IoFailure, "read error on '" + path_ + "'");
    eof_ = true;
    return false;
  }
  bytes_read_ += n;
  const size_t first = seps_.size();
  simd::kernels().find_separators(buf_.data() + end_, n, delim_, seps_);
  for (size_t i = first; i < seps_.size(); ++i) seps_[i] += static_cast<uint32_t>(end_);
  end_ += n;
  return true;
}

bool CsvReader::read_line(std::vector<std::string_view>& fields) {
  fields.clear();
  const char* base = buf_.data();
  size_t field_start = pos_;
  for (size_t k = sep_i_; k < seps_.size(); ++k) {
    size_t p = seps_[k];
    fields.emplace_back(base + field_start, p - field_start);
    if (base[p] == '\n') {
      pos_ = p + 1;
      sep_i_ = k + 1;
      auto& last = fields.back();
      if (!last.empty() && last.back() == '\r') last.remove_suffix(1);
      return true;
    }
    field_start = p + 1;
  }
  if (!eof_) return false;
  // Final line without a trailing newline.
  fields.emplace_back(base + field_start, end_ - field_start);
  pos_ = end_;
  sep_i_ = seps_.size();
  auto& last = fields.back();
  if (!last.empty() && last.back() == '\r') last.remove_suffix(1);
  return true;
}

bool CsvReader::next(std::vector<std::string_view>& fields) {
  for (;;) {
    if (pos_ == end_ && eof_) return false;
    if (read_line(fields)) {
      if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
      ++rows_;
      return true;
    }
    fill();
  }
}

std::vector<std::string> read_csv_header(const std::string& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open '" + path + "': " + errno_text());
  std::string line;
  if (!std::getline(in, line)) return {};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t p = line.find(delimiter, start);
    out.push_back(line.substr(start, p == std::string::npos ? std::string::npos : p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

CsvWriter::CsvWriter(const std::string& path, char delimiter) : path_(path), delim_(delimiter) {
  file_ = std::fopen(path.c_str(), "wb");
  if (!file_) throw Error(Errc::IoFailure, "cannot create '" + path + "': " + errno_text());
  out_.reserve(kFlushAt + 4096);
}

CsvWriter::~CsvWriter() {
  if (file_) {
    if (!out_.empty()) std::fwrite(out_.data(), 1, out_.size(), file_);
    std::fclose(file_);
  }
}

void CsvWriter::put(std::string_view s) {
  out_.append(s);
  if (out_.size() >= kFlushAt) {
    if (std::fwrite(out_.data(), 1, out_.size(), file_) != out_.size())
      throw Error(Errc::IoFailure, "write error on '" + path_ + "'");
    out_.clear();
  }
}

void CsvWriter::write_row(const std::vector<std::string_view>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_.push_back(delim_);
    put(fields[i]);
  }
  put("\n");
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_.push_back(delim_);
    put(fields[i]);
  }
  put("\n");
}

void CsvWriter::write_line(std::string_view line) {
  put(line);
  put("\n");
}

void CsvWriter::close() {
  if (!file_) return;
  bool ok = out_.empty() || std::fwrite(out_.data(), 1, out_.size(), file_) == out_.size();
  out_.clear();
  ok = std::fclose(file_) == 0 && ok;
  file_ = nullptr;
  if (!ok) throw Error(Errc::IoFailure, "write error on '" + path_ + "'");
}

}  // namespace qca
