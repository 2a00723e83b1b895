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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qca {

enum class TypeTag { Int, Float, Text };

std::string_view type_name(TypeTag t) noexcept;

/// A cell value. std::monostate is SQL NULL.
using Value = std::variant<std::monostate, int64_t, double, std::string>;

inline bool is_null(const Value& v) noexcept { return std::holds_alternative<std::monostate>(v); }

std::string format_value(const Value& v);

/// Parses one CSV field as the given type. An empty field is NULL. Returns
/// std::nullopt when the text is not a valid literal of that type.
std::optional<Value> parse_field(std::string_view field, TypeTag type);

/// Typed column with a per-row validity byte (0 = NULL). NULL cells hold a
/// zero/empty placeholder in the value vector.
class Column {
 public:
  using Storage = std::variant<std::vector<int64_t>, std::vector<double>, std::vector<std::string>>;

  Column() : Column(TypeTag::Int) {}
  explicit Column(TypeTag type);

  TypeTag type() const noexcept { return type_; }
  size_t size() const noexcept { return valid_.size(); }
  void reserve(size_t n);

  /// Appends a raw field; returns false if it does not parse as type().
  bool append_field(std::string_view field);
  void append(const Value& v);
  void append_null();

  bool is_valid(size_t row) const noexcept { return valid_[row] != 0; }
  Value get(size_t row) const;

  const std::vector<int64_t>& ints() const { return std::get<std::vector<int64_t>>(data_); }
  const std::vector<double>& floats() const { return std::get<std::vector<double>>(data_); }
  const std::vector<std::string>& texts() const { return std::get<std::vector<std::string>>(data_); }
  const std::vector<uint8_t>& validity() const noexcept { return valid_; }
  bool has_nulls() const noexcept { return null_count_ != 0; }

  /// Bytes held by the values (text counts its characters).
  size_t memory_bytes() const;

  /// Rows picked by `rows`, in order.
  Column gather(const std::vector<uint32_t>& rows) const;

 private:
  TypeTag type_;
  Storage data_;
  std::vector<uint8_t> valid_;
  size_t null_count_ = 0;
};

}  // namespace qca
