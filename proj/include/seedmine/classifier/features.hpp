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
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace seedmine::classifier {

inline constexpr std::uint32_t kDefaultBuckets = 1u << 20;

// Sparse, sorted by bucket, no repeated buckets, unit L2 norm.
struct FeatureVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Lowercased whitespace tokens; every n-gram of order 1..max_order is
// hashed (fnv1a64 of the tokens joined by single spaces) into `buckets`
// buckets, counts are summed per bucket and the vector is L2-normalized.
// Throws EmptyText when the text has no tokens.
FeatureVector featurize(std::string_view text, std::uint32_t buckets = kDefaultBuckets, std::uint32_t max_order = 2);

// Bucket of one n-gram given as its space-joined lowercase tokens.
std::uint32_t bucket_of(std::string_view ngram, std::uint32_t buckets) noexcept;

}  // namespace seedmine::classifier
