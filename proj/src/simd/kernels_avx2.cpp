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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include "kernels_impl.hpp"

#if defined(QCA_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cstring>
#include <limits>

namespace qca::simd::avx2 {

namespace {

// 4-bit compare result -> four 0/1 bytes.
constexpr uint32_t expand_nibble(uint32_t bits) {
  return (bits & 1u) | ((bits >> 1) & 1u) << 8 | ((bits >> 2) & 1u) << 16 | ((bits >> 3) & 1u) << 24;
}

struct NibbleTable {
  uint32_t v[16];
  constexpr NibbleTable() : v() {
    for (uint32_t i = 0; i < 16; ++i) v[i] = expand_nibble(i);
  }
};

constexpr NibbleTable kNibbles;

inline void and_nibble(uint8_t* mask, int bits) {
  uint32_t m;
  std::memcpy(&m, mask, 4);
  m &= kNibbles.v[bits];
  std::memcpy(mask, &m, 4);
}

// Four mask bytes -> all-ones / all-zeros 64-bit lanes.
inline __m256i lane_mask(const uint8_t* mask) {
  uint32_t raw;
  std::memcpy(&raw, mask, 4);
  __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(static_cast<int>(raw)));
  return _mm256_cmpgt_epi64(wide, _mm256_setzero_si256());
}

template <int Pred>
void filter_f64_impl(const double* values, size_t n, double literal, uint8_t* mask) {
  const __m256d lit = _mm256_set1_pd(literal);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(values + i);
    and_nibble(mask + i, _mm256_movemask_pd(_mm256_cmp_pd(v, lit, Pred)));
  }
  if (i < n) {
    CompareOp op;
    switch (Pred) {
      case _CMP_LT_OQ: op = CompareOp::Lt; break;
      case _CMP_LE_OQ: op = CompareOp::Le; break;
      case _CMP_GT_OQ: op = CompareOp::Gt; break;
      case _CMP_GE_OQ: op = CompareOp::Ge; break;
      case _CMP_EQ_OQ: op = CompareOp::Eq; break;
      default: op = CompareOp::Ne; break;
    }
    scalar::filter_f64(values + i, n - i, op, literal, mask + i);
  }
}

}  // namespace

void find_separators(const char* data, size_t n, char delim, std::vector<uint32_t>& out) {
  const __m256i d = _mm256_set1_epi8(delim);
  const __m256i nl = _mm256_set1_epi8('\n');
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    auto bits = static_cast<uint32_t>(
        _mm256_movemask_epi8(_mm256_or_si256(_mm256_cmpeq_epi8(x, d), _mm256_cmpeq_epi8(x, nl))));
    while (bits) {
      out.push_back(static_cast<uint32_t>(i + static_cast<size_t>(__builtin_ctz(bits))));
      bits &= bits - 1;
    }
  }
  for (; i < n; ++i)
    if (data[i] == delim || data[i] == '\n') out.push_back(static_cast<uint32_t>(i));
}

void filter_f64(const double* values, size_t n, CompareOp op, double literal, uint8_t* mask) {
  switch (op) {
    case CompareOp::Lt: return filter_f64_impl<_CMP_LT_OQ>(values, n, literal, mask);
    case CompareOp::Le: return filter_f64_impl<_CMP_LE_OQ>(values, n, literal, mask);
    case CompareOp::Gt: return filter_f64_impl<_CMP_GT_OQ>(values, n, literal, mask);
    case CompareOp::Ge: return filter_f64_impl<_CMP_GE_OQ>(values, n, literal, mask);
    case CompareOp::Eq: return filter_f64_impl<_CMP_EQ_OQ>(values, n, literal, mask);
    case CompareOp::Ne: return filter_f64_impl<_CMP_NEQ_UQ>(values, n, literal, mask);
  }
}

void filter_i64(const int64_t* values, size_t n, CompareOp op, int64_t literal, uint8_t* mask) {
  const __m256i lit = _mm256_set1_epi64x(literal);
  const __m256i ones = _mm256_set1_epi64x(-1);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    __m256i c;
    switch (op) {
      case CompareOp::Lt: c = _mm256_cmpgt_epi64(lit, v); break;
      case CompareOp::Le: c = _mm256_xor_si256(_mm256_cmpgt_epi64(v, lit), ones); break;
      case CompareOp::Gt: c = _mm256_cmpgt_epi64(v, lit); break;
      case CompareOp::Ge: c = _mm256_xor_si256(_mm256_cmpgt_epi64(lit, v), ones); break;
      case CompareOp::Eq: c = _mm256_cmpeq_epi64(v, lit); break;
      default: c = _mm256_xor_si256(_mm256_cmpeq_epi64(v, lit), ones); break;
    }
    and_nibble(mask + i, _mm256_movemask_pd(_mm256_castsi256_pd(c)));
  }
  if (i < n) scalar::filter_i64(values + i, n - i, op, literal, mask + i);
}

void and_mask(uint8_t* mask, const uint8_t* other, size_t n) {
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(other + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(mask + i), _mm256_and_si256(a, b));
  }
  for (; i < n; ++i) mask[i] &= other[i];
}

uint64_t count_mask(const uint8_t* mask, size_t n) {
  const __m256i one = _mm256_set1_epi8(1);
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(_mm256_min_epu8(x, one), zero));
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += mask[i] != 0;
  return total;
}

F64Stats stats_f64(const double* values, const uint8_t* mask, size_t n) {
  __m256d sum = _mm256_setzero_pd();
  __m256d vmin = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d vmax = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256i count = _mm256_setzero_si256();
  const __m256i all = _mm256_set1_epi64x(-1);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(values + i);
    __m256i lanes = mask ? lane_mask(mask + i) : all;
    __m256d sel = _mm256_castsi256_pd(lanes);
    sum = _mm256_add_pd(sum, _mm256_and_pd(v, sel));
    vmin = _mm256_blendv_pd(vmin, v, _mm256_and_pd(sel, _mm256_cmp_pd(v, vmin, _CMP_LT_OQ)));
    vmax = _mm256_blendv_pd(vmax, v, _mm256_and_pd(sel, _mm256_cmp_pd(v, vmax, _CMP_GT_OQ)));
    count = _mm256_sub_epi64(count, lanes);
  }
  alignas(32) double s[4], mn[4], mx[4];
  alignas(32) int64_t c[4];
  _mm256_store_pd(s, sum);
  _mm256_store_pd(mn, vmin);
  _mm256_store_pd(mx, vmax);
  _mm256_store_si256(reinterpret_cast<__m256i*>(c), count);

  F64Stats out;
  out.count = static_cast<uint64_t>(c[0] + c[1] + c[2] + c[3]);
  double lo = std::min(std::min(mn[0], mn[1]), std::min(mn[2], mn[3]));
  double hi = std::max(std::max(mx[0], mx[1]), std::max(mx[2], mx[3]));
  for (; i < n; ++i) {
    if (mask && !mask[i]) continue;
    s[i % 4] += values[i];
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
    ++out.count;
  }
  out.sum = (s[0] + s[1]) + (s[2] + s[3]);
  if (out.count) {
    out.min = lo;
    out.max = hi;
  }
  return out;
}

I64Stats stats_i64(const int64_t* values, const uint8_t* mask, size_t n) {
  __m256i sum = _mm256_setzero_si256();
  __m256i vmin = _mm256_set1_epi64x(std::numeric_limits<int64_t>::max());
  __m256i vmax = _mm256_set1_epi64x(std::numeric_limits<int64_t>::min());
  __m256i count = _mm256_setzero_si256();
  const __m256i all = _mm256_set1_epi64x(-1);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    __m256i lanes = mask ? lane_mask(mask + i) : all;
    sum = _mm256_add_epi64(sum, _mm256_and_si256(v, lanes));
    __m256i lt = _mm256_and_si256(lanes, _mm256_cmpgt_epi64(vmin, v));
    __m256i gt = _mm256_and_si256(lanes, _mm256_cmpgt_epi64(v, vmax));
    vmin = _mm256_blendv_epi8(vmin, v, lt);
    vmax = _mm256_blendv_epi8(vmax, v, gt);
    count = _mm256_sub_epi64(count, lanes);
  }
  alignas(32) int64_t s[4], mn[4], mx[4], c[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(s), sum);
  _mm256_store_si256(reinterpret_cast<__m256i*>(mn), vmin);
  _mm256_store_si256(reinterpret_cast<__m256i*>(mx), vmax);
  _mm256_store_si256(reinterpret_cast<__m256i*>(c), count);

  I64Stats out;
  uint64_t total = static_cast<uint64_t>(s[0]) + static_cast<uint64_t>(s[1]) + static_cast<uint64_t>(s[2]) +
                   static_cast<uint64_t>(s[3]);
  out.count = static_cast<uint64_t>(c[0] + c[1] + c[2] + c[3]);
  int64_t lo = std::min(std::min(mn[0], mn[1]), std::min(mn[2], mn[3]));
  int64_t hi = std::max(std::max(mx[0], mx[1]), std::max(mx[2], mx[3]));
  for (; i < n; ++i) {
    if (mask && !mask[i]) continue;
    total += static_cast<uint64_t>(values[i]);
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
    ++out.count;
  }
  out.sum = static_cast<int64_t>(total);
  if (out.count) {
    out.min = lo;
    out.max = hi;
  }
  return out;
}

}  // namespace qca::simd::avx2

#endif  // QCA_HAVE_AVX2
