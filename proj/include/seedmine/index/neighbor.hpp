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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seedmine::index {

struct Neighbor {
  std::string id;
  double similarity = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Similarity descending, then id ascending.
inline bool ranks_before(const Neighbor& a, const Neighbor& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.id < b.id;
}

// Anything that can answer cosine top-k over unit vectors. The miner is
// written against this so an exact scan can stand in for the graph index.
class NeighborSource {
 public:
  virtual ~NeighborSource() = default;
  virtual std::size_t dim() const noexcept = 0;
  virtual std::size_t size() const noexcept = 0;
  virtual std::vector<Neighbor> query(std::span<const float> unit_query, std::size_t k,
                                      std::optional<std::size_t> ef_search = std::nullopt) const = 0;
};

}  // namespace seedmine::index
