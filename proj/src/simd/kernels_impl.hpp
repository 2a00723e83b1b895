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

#include "qca/simd/kernels.hpp"

namespace qca::simd {

namespace scalar {
void find_separators(const char* data, size_t n, char delim, std::vector<uint32_t>& out);
void filter_f64(const double* values, size_t n, CompareOp op, double literal, uint8_t* mask);
void filter_i64(const int64_t* values, size_t n, CompareOp op, int64_t literal, uint8_t* mask);
void and_mask(uint8_t* mask, const uint8_t* other, size_t n);
uint64_t count_mask(const uint8_t* mask, size_t n);
F64Stats stats_f64(const double* values, const uint8_t* mask, size_t n);
I64Stats stats_i64(const int64_t* values, const uint8_t* mask, size_t n);
}  // namespace scalar

#if defined(QCA_HAVE_AVX2)
namespace avx2 {
void find_separators(const char* data, size_t n, char delim, std::vector<uint32_t>& out);
void filter_f64(const double* values, size_t n, CompareOp op, double literal, uint8_t* mask);
void filter_i64(const int64_t* values, size_t n, CompareOp op, int64_t literal, uint8_t* mask);
void and_mask(uint8_t* mask, const uint8_t* other, size_t n);
uint64_t count_mask(const uint8_t* mask, size_t n);
F64Stats stats_f64(const double* values, const uint8_t* mask, size_t n);
I64Stats stats_i64(const int64_t* values, const uint8_t* mask, size_t n);
}  // namespace avx2
#endif

}  // namespace qca::simd
