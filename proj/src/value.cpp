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

#include "qca/value.hpp"

#include <charconv>
#include <cmath>

namespace qca {

std::string_view type_name(TypeTag t) noexcept {
  switch (t) {
    case TypeTag::Int: return "int";
    case TypeTag::Float: return "float";
    case TypeTag::Text: return "text";
  }
  return "?";
}

std::string format_value(const Value& v) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "NULL"; }
    std::string operator()(int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof(buf), d);
      return std::string(buf, res.ptr);
    }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

namespace {

bool parse_int(std::string_view s, int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last && std::isfinite(out);
}

}  // namespace

std::optional<Value> parse_field(std::string_view field, TypeTag type) {
  if (field.empty()) return Value{};
  switch (type) {
    case TypeTag::Int: {
      int64_t v;
      if (!parse_int(field, v)) return std::nullopt;
      return Value{v};
    }
    case TypeTag::Float: {
      double v;
      if (!parse_double(field, v)) return std::nullopt;
      return Value{v};
    }
    case TypeTag::Text:
      return Value{std::string(field)};
  }
  return std::nullopt;
}

Column::Column(TypeTag type) : type_(type) {
  switch (type) {
    case TypeTag::Int: data_ = std::vector<int64_t>{}; break;
    case TypeTag::Float: data_ = std::vector<double>{}; break;
    case TypeTag::Text: data_ = std::vector<std::string>{}; break;
  }
}

void Column::reserve(size_t n) {
  valid_.reserve(n);
  std::visit([n](auto& vec) { vec.reserve(n); }, data_);
}

bool Column::append_field(std::string_view field) {
  if (field.empty()) {
    append_null();
    return true;
  }
  switch (type_) {
    case TypeTag::Int: {
      int64_t v;
      if (!parse_int(field, v)) return false;
      std::get<std::vector<int64_t>>(data_).push_back(v);
      break;
    }
    case TypeTag::Float: {
      double v;
      if (!parse_double(field, v)) return false;
      std::get<std::vector<double>>(data_).push_back(v);
      break;
    }
    case TypeTag::Text:
      std::get<std::vector<std::string>>(data_).emplace_back(field);
      break;
  }
  valid_.push_back(1);
  return true;
}

void Column::append(const Value& v) {
  if (is_null(v)) {
    append_null();
    return;
  }
  switch (type_) {
    case TypeTag::Int:
      std::get<std::vector<int64_t>>(data_).push_back(std::get<int64_t>(v));
      break;
    case TypeTag::Float:
      std::get<std::vector<double>>(data_).push_back(
          std::holds_alternative<double>(v) ? std::get<double>(v) : static_cast<double>(std::get<int64_t>(v)));
      break;
    case TypeTag::Text:
      std::get<std::vector<std::string>>(data_).push_back(std::get<std::string>(v));
      break;
  }
  valid_.push_back(1);
}

void Column::append_null() {
  std::visit([](auto& vec) { vec.emplace_back(); }, data_);
  valid_.push_back(0);
  ++null_count_;
}

Value Column::get(size_t row) const {
  if (!valid_[row]) return Value{};
  switch (type_) {
    case TypeTag::Int: return Value{ints()[row]};
    case TypeTag::Float: return Value{floats()[row]};
    case TypeTag::Text: return Value{texts()[row]};
  }
  return Value{};
}

size_t Column::memory_bytes() const {
  switch (type_) {
    case TypeTag::Int: return ints().size() * sizeof(int64_t);
    case TypeTag::Float: return floats().size() * sizeof(double);
    case TypeTag::Text: {
      size_t total = 0;
      for (const auto& s : texts()) total += s.size();
      return total;
    }
  }
  return 0;
}

Column Column::gather(const std::vector<uint32_t>& rows) const {
  Column out(type_);
  out.valid_.reserve(rows.size());
  std::visit(
      [&](const auto& src) {
        using Vec = std::decay_t<decltype(src)>;
        Vec dst;
        dst.reserve(rows.size());
        for (uint32_t r : rows) dst.push_back(src[r]);
        out.data_ = std::move(dst);
      },
      data_);
  for (uint32_t r : rows) {
    out.valid_.push_back(valid_[r]);
    if (!valid_[r]) ++out.null_count_;
  }
  return out;
}

}  // namespace qca
