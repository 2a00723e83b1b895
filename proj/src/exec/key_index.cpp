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

#include "qca/error.hpp"
#include "qca/exec.hpp"

namespace qca {

std::string KeyIndex::encode(const std::vector<const Column*>& keys, size_t row) {
  std::string out;
  for (size_t k = 0; k < keys.size(); ++k) {
    if (k) out.push_back('\x1f');
    out += format_value(keys[k]->get(row));
  }
  return out;
}

void KeyIndex::build(const std::vector<const Column*>& keys, const std::vector<std::string>& names, bool unique,
                     const std::string& what) {
  names_ = names;
  by_int_.clear();
  by_text_.clear();
  const size_t rows = keys.empty() ? 0 : keys.front()->size();
  next_.assign(rows, kNone);
  int_keyed_ = keys.size() == 1 && keys.front()->type() == TypeTag::Int;

  auto check_null = [&](size_t r) {
    for (size_t k = 0; k < keys.size(); ++k)
      if (!keys[k]->is_valid(r))
        throw Error(Errc::ParseError, what + ": row " + std::to_string(r + 1) + ": primary key '" + names_[k] +
                                          "' is empty");
  };
  auto duplicate = [&](size_t r) {
    throw Error(Errc::DuplicateKey,
                what + ": row " + std::to_string(r + 1) + " repeats primary key " + encode(keys, r));
  };

  // Reverse insertion keeps chains in ascending row order.
  if (int_keyed_) {
    const auto& v = keys.front()->ints();
    by_int_.reserve(rows);
    for (size_t r = rows; r-- > 0;) {
      check_null(r);
      auto [it, fresh] = by_int_.try_emplace(v[r], static_cast<uint32_t>(r));
      if (!fresh) {
        if (unique) duplicate(r);
        next_[r] = it->second;
        it->second = static_cast<uint32_t>(r);
      }
    }
  } else {
    by_text_.reserve(rows);
    for (size_t r = rows; r-- > 0;) {
      check_null(r);
      auto [it, fresh] = by_text_.try_emplace(encode(keys, r), static_cast<uint32_t>(r));
      if (!fresh) {
        if (unique) duplicate(r);
        next_[r] = it->second;
        it->second = static_cast<uint32_t>(r);
      }
    }
  }
}

uint32_t KeyIndex::first(int64_t key) const {
  auto it = by_int_.find(key);
  return it == by_int_.end() ? kNone : it->second;
}

uint32_t KeyIndex::first(const std::string& encoded) const {
  auto it = by_text_.find(encoded);
  return it == by_text_.end() ? kNone : it->second;
}

size_t KeyIndex::memory_bytes() const {
  size_t bytes = next_.size() * sizeof(uint32_t);
  bytes += by_int_.size() * (sizeof(int64_t) + sizeof(uint32_t) + sizeof(void*));
  for (const auto& [k, v] : by_text_) bytes += k.size() + sizeof(uint32_t) + sizeof(void*);
  return bytes;
}

}  // namespace qca
