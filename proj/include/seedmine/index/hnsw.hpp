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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "seedmine/index/neighbor.hpp"

namespace seedmine::index {

struct IndexParams {
  std::size_t m = 45;
  std::size_t ef_construction = 256;
  std::size_t ef_search = 50;
  std::size_t dim = 1024;
  std::uint64_t seed = 42;

  // Throws InvalidParams (m >= 2, ef_construction >= m, ef_search >= 1, dim >= 1).
  void validate() const;
};

void from_json(const nlohmann::json& j, IndexParams& p);
void to_json(nlohmann::json& j, const IndexParams& p);

// Hierarchical navigable small world graph under cosine similarity. Stored
// vectors are float32 and expected to be unit norm, so similarity is a dot
// product.
//
// Degree bounds: at most m links per node on layers >= 1 and at most 2*m on
// layer 0 (the usual layer-0 doubling). Neighbor lists are chosen with the
// diversity heuristic, topped up with the closest pruned candidates when it
// keeps fewer than the cap. Node levels come from a geometric distribution with
// multiplier 1/ln(m), drawn from a hash of (seed, insertion ordinal), so the
// graph is a pure function of the seed and the insertion sequence.
//
// Append-only. Single writer; once building is done, concurrent query()
// calls are safe.
class HnswIndex final : public NeighborSource {
 public:
  explicit HnswIndex(IndexParams params);

  // Throws DuplicateId or DimensionMismatch.
  void insert(const std::string& id, std::span<const float> unit_vector);

  // ef defaults to params().ef_search and is raised to k when smaller.
  std::vector<Neighbor> query(std::span<const float> unit_query, std::size_t k,
                              std::optional<std::size_t> ef_search = std::nullopt) const override;

  std::size_t dim() const noexcept override { return params_.dim; }
  std::size_t size() const noexcept override { return ids_.size(); }
  const IndexParams& params() const noexcept { return params_; }

  // File: fixed header {magic, version, dim, m, ef_construction, seed,
  // count, crc32 of payload} then the payload (ef_search, entry point,
  // per-node id, level, vector and per-layer adjacency). Little-endian.
  void persist(const std::filesystem::path& path) const;
  static HnswIndex load(const std::filesystem::path& path);

  // Introspection, mostly for tests.
  int max_level() const noexcept { return max_level_; }
  int level_of(std::uint32_t node) const { return levels_.at(node); }
  std::span<const std::uint32_t> links(std::uint32_t node, int level) const;
  std::size_t max_degree(int level) const noexcept { return level == 0 ? 2 * params_.m : params_.m; }
  const std::string& id_of(std::uint32_t node) const { return ids_.at(node); }
  std::span<const float> vector_of(std::uint32_t node) const;

 private:
  struct Candidate {
    float sim;
    std::uint32_t node;
  };

  float similarity(std::span<const float> q, std::uint32_t node) const;
  float similarity(std::uint32_t a, std::uint32_t b) const;
  int draw_level(std::uint64_t ordinal) const;
  std::vector<Candidate> search_layer(std::span<const float> q, const std::vector<Candidate>& entries,
                                      std::size_t ef, int level) const;
  std::vector<Candidate> select_neighbors(const std::vector<Candidate>& sorted, std::size_t max_count) const;
  void shrink_links(std::uint32_t node, int level);

  IndexParams params_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::vector<float> data_;  // size() * dim
  std::vector<int> levels_;
  std::vector<std::vector<std::vector<std::uint32_t>>> links_;  // [node][level]
  std::optional<std::uint32_t> entry_;
  int max_level_ = -1;
};

// Exhaustive scan with the same ordering contract; exact by construction.
class FlatIndex final : public NeighborSource {
 public:
  explicit FlatIndex(std::size_t dim);

  void insert(const std::string& id, std::span<const float> unit_vector);
  std::vector<Neighbor> query(std::span<const float> unit_query, std::size_t k,
                              std::optional<std::size_t> ef_search = std::nullopt) const override;

  std::size_t dim() const noexcept override { return dim_; }
  std::size_t size() const noexcept override { return ids_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::vector<float> data_;
};

}  // namespace seedmine::index
