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

#include <cstddef>

namespace seedmine::simd {

#define SEEDMINE_DECLARE_KERNELS(ns)                                 \
  namespace ns {                                                     \
  float dot_f32(const float* a, const float* b, std::size_t n);      \
  float sqnorm_f32(const float* a, std::size_t n);                   \
  double dot_f64(const double* a, const double* b, std::size_t n);   \
  void scale_f32(float* a, std::size_t n, float factor);             \
  }

SEEDMINE_DECLARE_KERNELS(avx2)
SEEDMINE_DECLARE_KERNELS(neon)

#undef SEEDMINE_DECLARE_KERNELS

}  // namespace seedmine::simd
