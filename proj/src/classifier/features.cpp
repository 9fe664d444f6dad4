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


#include "seedmine/classifier/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::classifier {

std::uint32_t bucket_of(std::string_view ngram, std::uint32_t buckets) noexcept {
  return static_cast<std::uint32_t>(fnv1a64(ngram) % buckets);
}

FeatureVector featurize(std::string_view raw, std::uint32_t buckets, std::uint32_t max_order) {
  if (buckets == 0 || max_order == 0) throw Error(ErrorCode::kInvalidParams, "buckets and max_order must be >= 1");
  std::vector<std::string> tokens;
  for (auto t : text::split_whitespace(raw)) tokens.push_back(text::lowercase(t));
  if (tokens.empty()) throw Error(ErrorCode::kEmptyText, "cannot featurize empty text");

  std::vector<std::uint32_t> hits;
  std::string gram;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    gram.clear();
    for (std::size_t n = 0; n < max_order && i + n < tokens.size(); ++n) {
      if (n > 0) gram += ' ';
      gram += tokens[i + n];
      hits.push_back(bucket_of(gram, buckets));
    }
  }
  std::sort(hits.begin(), hits.end());

  FeatureVector fv;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    fv.entries.emplace_back(hits[i], static_cast<double>(j - i));
    i = j;
  }
  double norm = 0.0;
  for (const auto& [b, c] : fv.entries) norm += c * c;
  norm = std::sqrt(norm);
  for (auto& [b, c] : fv.entries) c /= norm;
  return fv;
}

}  // namespace seedmine::classifier
