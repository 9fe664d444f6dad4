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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "seedmine/classifier/example.hpp"
#include "seedmine/embed/embedder.hpp"
#include "seedmine/index/neighbor.hpp"
#include "seedmine/seedgen/seed.hpp"

namespace seedmine::miner {

struct MiningParams {
  std::size_t k = 200;
  double t_sim = 0.85;
  std::optional<std::size_t> ef_search;  // index default when absent; raised to k
  std::size_t evidence_cap = 10;         // per label

  // Throws InvalidParams unless k >= 1, 0 < t_sim <= 1, evidence_cap >= 1.
  void validate() const;
};

void from_json(const nlohmann::json& j, MiningParams& p);
void to_json(nlohmann::json& j, const MiningParams& p);

struct Evidence {
  std::string label;
  std::string seed_id;
  double similarity = 0.0;

  friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct LabeledRecord {
  std::string doc_id;  // chunk id
  std::string text;
  std::vector<std::string> labels;  // sorted
  std::vector<Evidence> evidence;   // by label, then similarity descending, then seed id

  friend bool operator==(const LabeledRecord&, const LabeledRecord&) = default;
};

// The thresholded neighbors of one seed, tagged with that seed's domains.
struct SeedHits {
  std::string seed_id;
  std::vector<std::string> domains;
  std::vector<index::Neighbor> neighbors;
};

// Top-k over the index, keeping similarity >= t_sim. Throws
// DimensionMismatch when the vector and index disagree.
std::vector<index::Neighbor> mine_neighbors(std::span<const float> seed_vector, const index::NeighborSource& index,
                                            const MiningParams& params);

// Embeds seed.fields.document (only) and mines it.
std::vector<index::Neighbor> mine_neighbors(const seedgen::SeedDocument& seed, const index::NeighborSource& index,
                                            const embed::Embedder& embedder, const MiningParams& params);

// Merges hits by doc id. Every domain of a seed that retrieved a doc becomes
// a label of that doc; evidence keeps the `evidence_cap` best hits per
// label. The result is independent of the order of `hits`. Record text is
// looked up in `texts` when given.
std::vector<LabeledRecord> assign_labels(const std::vector<SeedHits>& hits, std::size_t evidence_cap,
                                         const std::unordered_map<std::string, std::string>* texts = nullptr);

// "doc#3" -> "doc". Ids without '#' are returned unchanged.
std::string parent_doc_id(std::string_view chunk_id);

// Document-level labels: union over each document's labeled chunks.
std::map<std::string, std::vector<std::string>> rollup_documents(const std::vector<LabeledRecord>& records);

struct SplitFractions {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct TrainingSplit {
  std::vector<classifier::Example> train;
  std::vector<classifier::Example> dev;
  std::vector<classifier::Example> test;
  std::map<std::string, std::size_t> train_label_counts;
  std::map<std::string, std::size_t> dev_label_counts;
  std::map<std::string, std::size_t> test_label_counts;
};

// Orders records by (fnv1a64(id), id), then takes the first round(train*n)
// for train, the next round(dev*n) for dev and the rest for test. Throws
// InvalidParams for bad fractions and InsufficientData naming the first
// label with fewer than `min_per_label` training records. Records with no
// labels are negatives and are exempt from the floor.
TrainingSplit build_training_set(std::vector<classifier::Example> records, const SplitFractions& fractions,
                                 std::size_t min_per_label = 10);

// Picks `count` ids (or all, if fewer) from `candidates` minus `exclude`,
// uniformly without replacement. Result is sorted and depends only on the
// inputs and `seed`.
std::vector<std::string> sample_negatives(const std::vector<std::string>& candidates,
                                          const std::unordered_set<std::string>& exclude, std::size_t count,
                                          std::uint64_t seed);

nlohmann::json to_json(const LabeledRecord& r);
LabeledRecord labeled_from_json(const nlohmann::json& j);
classifier::Example to_example(const LabeledRecord& r);

}  // namespace seedmine::miner
