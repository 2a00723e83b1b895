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

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace qca::simd {

namespace {

const KernelTable kScalar = {Isa::Scalar,        scalar::find_separators, scalar::filter_f64, scalar::filter_i64,
                             scalar::and_mask,   scalar::count_mask,      scalar::stats_f64,  scalar::stats_i64};

#if defined(QCA_HAVE_AVX2)
const KernelTable kAvx2 = {Isa::Avx2,        avx2::find_separators, avx2::filter_f64, avx2::filter_i64,
                           avx2::and_mask,   avx2::count_mask,      avx2::stats_f64,  avx2::stats_i64};
#endif

bool cpu_has_avx2() noexcept {
#if defined(QCA_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() noexcept {
  const char* env = std::getenv("QCA_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &kScalar;
  const KernelTable* wide = avx2_kernels();
  return wide ? wide : &kScalar;
}

std::atomic<const KernelTable*>& active() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable& scalar_kernels() noexcept { return kScalar; }

const KernelTable* avx2_kernels() noexcept {
#if defined(QCA_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() noexcept { return *active().load(std::memory_order_acquire); }

bool set_isa(Isa isa) noexcept {
  const KernelTable* table = isa == Isa::Scalar ? &kScalar : avx2_kernels();
  if (!table) return false;
  active().store(table, std::memory_order_release);
  return true;
}

}  // namespace qca::simd
