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
#include <span>
#include <vector>

namespace seedmine::embed {

inline constexpr std::size_t kDefaultDim = 1024;

// Unit-norm vector in the shared embedding space. Values are kept in double
// precision at this layer; the index stores a float32 copy.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;

  // Normalizes `values`. Throws ZeroVector if the norm is zero or not finite.
  static EmbeddingVector normalized(std::vector<double> values);
  static EmbeddingVector normalized(std::span<const float> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<float> to_float() const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  explicit EmbeddingVector(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

// dot(a,b) / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatch or
// ZeroVector. Symmetric bit-for-bit.
double cosine(std::span<const double> a, std::span<const double> b);
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace seedmine::embed
