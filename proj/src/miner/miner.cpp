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


#include "seedmine/miner/miner.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/rng.hpp"

namespace seedmine::miner {

void MiningParams::validate() const {
  if (k == 0) throw Error(ErrorCode::kInvalidParams, "k must be >= 1");
  if (!(t_sim > 0.0 && t_sim <= 1.0)) throw Error(ErrorCode::kInvalidParams, "t_sim must lie in (0, 1]");
  if (evidence_cap == 0) throw Error(ErrorCode::kInvalidParams, "evidence_cap must be >= 1");
  if (ef_search && *ef_search == 0) throw Error(ErrorCode::kInvalidParams, "ef_search must be >= 1");
}

void from_json(const nlohmann::json& j, MiningParams& p) {
  p.k = j.value("k", p.k);
  p.t_sim = j.value("t_sim", p.t_sim);
  p.evidence_cap = j.value("evidence_cap", p.evidence_cap);
  if (j.contains("ef_search") && !j.at("ef_search").is_null()) p.ef_search = j.at("ef_search").get<std::size_t>();
}

void to_json(nlohmann::json& j, const MiningParams& p) {
  j = nlohmann::json{{"k", p.k}, {"t_sim", p.t_sim}, {"evidence_cap", p.evidence_cap}};
  j["ef_search"] = p.ef_search ? nlohmann::json(*p.ef_search) : nlohmann::json(nullptr);
}

std::vector<index::Neighbor> mine_neighbors(std::span<const float> seed_vector, const index::NeighborSource& index,
                                            const MiningParams& params) {
  params.validate();
  auto found = index.query(seed_vector, params.k, params.ef_search);
  std::erase_if(found, [&](const index::Neighbor& n) { return n.similarity < params.t_sim; });
  return found;
}

std::vector<index::Neighbor> mine_neighbors(const seedgen::SeedDocument& seed, const index::NeighborSource& index,
                                            const embed::Embedder& embedder, const MiningParams& params) {
  if (embedder.dim() != index.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedder dim " + std::to_string(embedder.dim()) +
                                                   " != index dim " + std::to_string(index.dim()));
  }
  const auto v = embedder.embed(seed.fields.document).to_float();
  return mine_neighbors(v, index, params);
}

std::vector<LabeledRecord> assign_labels(const std::vector<SeedHits>& hits, std::size_t evidence_cap,
                                         const std::unordered_map<std::string, std::string>* texts) {
  // doc -> label -> evidence
  std::map<std::string, std::map<std::string, std::vector<Evidence>>> by_doc;
  for (const auto& h : hits) {
    std::set<std::string> domains(h.domains.begin(), h.domains.end());
    for (const auto& n : h.neighbors) {
      auto& labels = by_doc[n.id];
      for (const auto& d : domains) labels[d].push_back({d, h.seed_id, n.similarity});
    }
  }

  std::vector<LabeledRecord> out;
  out.reserve(by_doc.size());
  for (auto& [doc_id, labels] : by_doc) {
    LabeledRecord r;
    r.doc_id = doc_id;
    if (texts) {
      const auto it = texts->find(doc_id);
      if (it != texts->end()) r.text = it->second;
    }
    for (auto& [label, ev] : labels) {
      r.labels.push_back(label);
      std::sort(ev.begin(), ev.end(), [](const Evidence& a, const Evidence& b) {
        if (a.similarity != b.similarity) return a.similarity > b.similarity;
        return a.seed_id < b.seed_id;
      });
      ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
      if (ev.size() > evidence_cap) ev.resize(evidence_cap);
      r.evidence.insert(r.evidence.end(), ev.begin(), ev.end());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string parent_doc_id(std::string_view chunk_id) {
  const auto pos = chunk_id.rfind('#');
  return std::string(pos == std::string_view::npos ? chunk_id : chunk_id.substr(0, pos));
}

std::map<std::string, std::vector<std::string>> rollup_documents(const std::vector<LabeledRecord>& records) {
  std::map<std::string, std::set<std::string>> acc;
  for (const auto& r : records) acc[parent_doc_id(r.doc_id)].insert(r.labels.begin(), r.labels.end());
  std::map<std::string, std::vector<std::string>> out;
  for (auto& [doc, labels] : acc) out.emplace(doc, std::vector<std::string>(labels.begin(), labels.end()));
  return out;
}

TrainingSplit build_training_set(std::vector<classifier::Example> records, const SplitFractions& f,
                                 std::size_t min_per_label) {
  const bool positive = f.train > 0.0 && f.dev > 0.0 && f.test > 0.0;
  if (!positive || std::abs(f.train + f.dev + f.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidParams, "split fractions must be positive and sum to 1");
  }
  std::sort(records.begin(), records.end(), [](const classifier::Example& a, const classifier::Example& b) {
    const auto ha = fnv1a64(a.id);
    const auto hb = fnv1a64(b.id);
    return ha != hb ? ha < hb : a.id < b.id;
  });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].id == records[i - 1].id) throw Error(ErrorCode::kDuplicateId, "record twice: " + records[i].id);
  }

  const std::size_t n = records.size();
  const std::size_t n_train = std::min(n, static_cast<std::size_t>(std::llround(f.train * static_cast<double>(n))));
  const std::size_t n_dev =
      std::min(n - n_train, static_cast<std::size_t>(std::llround(f.dev * static_cast<double>(n))));

  TrainingSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    auto& dest = i < n_train ? split.train : (i < n_train + n_dev ? split.dev : split.test);
    auto& counts = i < n_train ? split.train_label_counts
                               : (i < n_train + n_dev ? split.dev_label_counts : split.test_label_counts);
    for (const auto& l : records[i].labels) ++counts[l];
    dest.push_back(std::move(records[i]));
  }

  std::set<std::string> all_labels;
  for (const auto* part : {&split.train, &split.dev, &split.test}) {
    for (const auto& r : *part) all_labels.insert(r.labels.begin(), r.labels.end());
  }
  for (const auto& l : all_labels) {
    const auto it = split.train_label_counts.find(l);
    const std::size_t have = it == split.train_label_counts.end() ? 0 : it->second;
    if (have < min_per_label) {
      throw Error(ErrorCode::kInsufficientData, "label '" + l + "' has " + std::to_string(have) +
                                                    " training records, need " + std::to_string(min_per_label));
    }
  }
  return split;
}

std::vector<std::string> sample_negatives(const std::vector<std::string>& candidates,
                                          const std::unordered_set<std::string>& exclude, std::size_t count,
                                          std::uint64_t seed) {
  std::vector<std::string> pool;
  for (const auto& c : candidates) {
    if (!exclude.contains(c)) pool.push_back(c);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::string>(pool));
  if (pool.size() > count) pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

nlohmann::json to_json(const LabeledRecord& r) {
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : r.evidence) ev.push_back({{"label", e.label}, {"seed_id", e.seed_id}, {"sim", e.similarity}});
  return nlohmann::json{{"doc_id", r.doc_id}, {"text", r.text}, {"labels", r.labels}, {"evidence", ev}};
}

LabeledRecord labeled_from_json(const nlohmann::json& j) {
  try {
    LabeledRecord r;
    r.doc_id = j.at("doc_id").get<std::string>();
    r.text = j.value("text", std::string{});
    r.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& e : j.at("evidence")) {
      r.evidence.push_back(
          {e.at("label").get<std::string>(), e.at("seed_id").get<std::string>(), e.at("sim").get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("bad labeled record: ") + e.what());
  }
}

classifier::Example to_example(const LabeledRecord& r) { return {r.doc_id, r.text, r.labels}; }

}  // namespace seedmine::miner
