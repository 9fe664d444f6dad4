// Copyright 2026 The Seedmine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdlib>
#include <string>

#include "seedmine/simd/kernels.hpp"
#include "simd_internal.hpp"

namespace seedmine::simd {
namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, scalar::dot_f32, scalar::sqnorm_f32,
                                   scalar::dot_f64, scalar::scale_f32};

#if defined(SEEDMINE_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, avx2::dot_f32, avx2::sqnorm_f32, avx2::dot_f64,
                                 avx2::scale_f32};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(SEEDMINE_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::kNeon, neon::dot_f32, neon::sqnorm_f32, neon::dot_f64,
                                 neon::scale_f32};
#endif

const KernelTable& select() noexcept {
  const char* forced = std::getenv("SEEDMINE_SIMD");
  if (forced != nullptr && std::string(forced) != "auto") {
    const std::string want(forced);
    for (Isa isa : available()) {
      if (name(isa) == want) return *table_for(isa);
    }
    // Unknown or unsupported request: stay on the reference kernels.
    return kScalarTable;
  }
  const auto isas = available();
  return *table_for(isas.back());
}

}  // namespace

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out{Isa::kScalar};
#if defined(SEEDMINE_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(Isa::kAvx2);
#endif
#if defined(SEEDMINE_HAVE_NEON)
  out.push_back(Isa::kNeon);
#endif
  return out;
}

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return &kScalarTable;
    case Isa::kAvx2:
#if defined(SEEDMINE_HAVE_AVX2)
      return cpu_has_avx2() ? &kAvx2Table : nullptr;
#else
      return nullptr;
#endif
    case Isa::kNeon:
#if defined(SEEDMINE_HAVE_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

}  // namespace seedmine::simd
