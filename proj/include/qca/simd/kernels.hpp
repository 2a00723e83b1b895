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

// Data-parallel inner loops of the engines. Every kernel has a scalar
// reference; an AVX2 variant is picked at runtime when the CPU supports it.
// Variants must produce identical output, including the floating-point sum,
// which the scalar reference accumulates in the same four-lane order the
// vector code uses.
//
// Masks are one byte per row holding 0 or 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qca/query.hpp"

namespace qca::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct F64Stats {
  uint64_t count = 0;
  double sum = 0;
  double min = 0;  // meaningful only when count > 0
  double max = 0;
};

struct I64Stats {
  uint64_t count = 0;
  int64_t sum = 0;  // wraps on overflow
  int64_t min = 0;
  int64_t max = 0;
};

struct KernelTable {
  Isa isa;
  /// Appends the offset of every `delim` or '\n' byte in data[0, n), in order.
  void (*find_separators)(const char* data, size_t n, char delim, std::vector<uint32_t>& out);
  /// mask[i] &= (values[i] op literal)
  void (*filter_f64)(const double* values, size_t n, CompareOp op, double literal, uint8_t* mask);
  void (*filter_i64)(const int64_t* values, size_t n, CompareOp op, int64_t literal, uint8_t* mask);
  /// mask[i] &= other[i]
  void (*and_mask)(uint8_t* mask, const uint8_t* other, size_t n);
  /// Number of set bytes.
  uint64_t (*count_mask)(const uint8_t* mask, size_t n);
  /// Statistics over rows with mask[i] != 0; a null mask selects every row.
  F64Stats (*stats_f64)(const double* values, const uint8_t* mask, size_t n);
  I64Stats (*stats_i64)(const int64_t* values, const uint8_t* mask, size_t n);
};

const KernelTable& scalar_kernels() noexcept;
/// nullptr when the build or the CPU lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

/// The active table. Defaults to the widest supported ISA; setting the
/// environment variable QCA_SIMD=scalar forces the reference kernels.
const KernelTable& kernels() noexcept;

/// Switches the active table. Returns false if `isa` is unavailable. Not
/// meant to be called while queries run.
bool set_isa(Isa isa) noexcept;

}  // namespace qca::simd
