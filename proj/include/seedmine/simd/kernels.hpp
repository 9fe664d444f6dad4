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


#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Dense vector kernels used on the hot paths (HNSW distance evaluation,
// exact scans, normalization). Each kernel has a portable scalar reference
// and optional AVX2+FMA / NEON variants; one table is selected at startup
// from the CPU features, or forced with SEEDMINE_SIMD=scalar|avx2|neon.
namespace seedmine::simd {

enum class Isa { kScalar, kAvx2, kNeon };

struct KernelTable {
  Isa isa;
  float (*dot_f32)(const float* a, const float* b, std::size_t n);
  float (*sqnorm_f32)(const float* a, std::size_t n);
  double (*dot_f64)(const double* a, const double* b, std::size_t n);
  void (*scale_f32)(float* a, std::size_t n, float factor);
};

std::string_view name(Isa isa) noexcept;

// Tables compiled into this binary and supported by the running CPU.
std::vector<Isa> available();

// nullptr when `isa` is not compiled in or not supported here.
const KernelTable* table_for(Isa isa) noexcept;

const KernelTable& active() noexcept;

namespace scalar {
float dot_f32(const float* a, const float* b, std::size_t n);
float sqnorm_f32(const float* a, std::size_t n);
double dot_f64(const double* a, const double* b, std::size_t n);
void scale_f32(float* a, std::size_t n, float factor);
}  // namespace scalar

inline float dot(std::span<const float> a, std::span<const float> b) {
  assert(a.size() == b.size());
  return active().dot_f32(a.data(), b.data(), a.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot_f64(a.data(), b.data(), a.size());
}

inline float sqnorm(std::span<const float> a) { return active().sqnorm_f32(a.data(), a.size()); }

inline void scale(std::span<float> a, float factor) { active().scale_f32(a.data(), a.size(), factor); }

}  // namespace seedmine::simd
