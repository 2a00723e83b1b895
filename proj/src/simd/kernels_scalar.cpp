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

#include <algorithm>

#include "kernels_impl.hpp"

namespace qca::simd::scalar {

void find_separators(const char* data, size_t n, char delim, std::vector<uint32_t>& out) {
  for (size_t i = 0; i < n; ++i)
    if (data[i] == delim || data[i] == '\n') out.push_back(static_cast<uint32_t>(i));
}

template <typename T>
static void filter(const T* values, size_t n, CompareOp op, T literal, uint8_t* mask) {
  switch (op) {
    case CompareOp::Lt:
      for (size_t i = 0; i < n; ++i) mask[i] &= values[i] < literal;
      break;
    case CompareOp::Le:
      for (size_t i = 0; i < n; ++i) mask[i] &= values[i] <= literal;
      break;
    case CompareOp::Gt:
      for (size_t i = 0; i < n; ++i) mask[i] &= values[i] > literal;
      break;
    case CompareOp::Ge:
      for (size_t i = 0; i < n; ++i) mask[i] &= values[i] >= literal;
      break;
    case CompareOp::Eq:
      for (size_t i = 0; i < n; ++i) mask[i] &= values[i] == literal;
      break;
    case CompareOp::Ne:
      for (size_t i = 0; i < n; ++i) mask[i] &= values[i] != literal;
      break;
  }
}

void filter_f64(const double* values, size_t n, CompareOp op, double literal, uint8_t* mask) {
  filter(values, n, op, literal, mask);
}

void filter_i64(const int64_t* values, size_t n, CompareOp op, int64_t literal, uint8_t* mask) {
  filter(values, n, op, literal, mask);
}

void and_mask(uint8_t* mask, const uint8_t* other, size_t n) {
  for (size_t i = 0; i < n; ++i) mask[i] &= other[i];
}

uint64_t count_mask(const uint8_t* mask, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += mask[i] != 0;
  return c;
}

F64Stats stats_f64(const double* values, const uint8_t* mask, size_t n) {
  // Lane i % 4 accumulates element i; lanes combine as (0+1)+(2+3).
  double lanes[4] = {0, 0, 0, 0};
  F64Stats s;
  for (size_t i = 0; i < n; ++i) {
    if (mask && !mask[i]) continue;
    double v = values[i];
    lanes[i % 4] += v;
    if (s.count == 0) {
      s.min = s.max = v;
    } else {
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
    ++s.count;
  }
  s.sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  return s;
}

I64Stats stats_i64(const int64_t* values, const uint8_t* mask, size_t n) {
  I64Stats s;
  uint64_t sum = 0;
  for (size_t i = 0; i < n; ++i) {
    if (mask && !mask[i]) continue;
    int64_t v = values[i];
    sum += static_cast<uint64_t>(v);
    if (s.count == 0) {
      s.min = s.max = v;
    } else {
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
    ++s.count;
  }
  s.sum = static_cast<int64_t>(sum);
  return s;
}

}  // namespace qca::simd::scalar
