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


#include "seedmine/embed/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seedmine/simd/kernels.hpp"
#include "seedmine/util/error.hpp"

namespace seedmine::embed {

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kDimensionMismatch, "embedding has dimension 0");
  const double norm = std::sqrt(simd::dot(std::span<const double>(values), std::span<const double>(values)));
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kZeroVector, "cannot normalize a zero or non-finite vector");
  }
  for (double& v : values) v /= norm;
  return EmbeddingVector(std::move(values));
}

EmbeddingVector EmbeddingVector::normalized(std::span<const float> values) {
  return normalized(std::vector<double>(values.begin(), values.end()));
}

std::vector<float> EmbeddingVector::to_float() const {
  return std::vector<float>(values_.begin(), values_.end());
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cosine of dim " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  const double aa = simd::dot(a, a);
  const double bb = simd::dot(b, b);
  if (!(aa > 0.0) || !(bb > 0.0)) throw Error(ErrorCode::kZeroVector, "cosine of a zero vector");
  // sqrt(aa)*sqrt(bb) rather than sqrt(aa*bb): keeps the two norms
  // independent so that cosine(a, b) == cosine(b, a) exactly.
  const double c = simd::dot(a, b) / (std::sqrt(aa) * std::sqrt(bb));
  return std::clamp(c, -1.0, 1.0);
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) { return cosine(a.values(), b.values()); }

}  // namespace seedmine::embed
