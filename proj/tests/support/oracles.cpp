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


#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "seedmine/corpus/chunker.hpp"
#include "seedmine/embed/embedder.hpp"
#include "seedmine/seedgen/batch.hpp"
#include "seedmine/seedgen/generator.hpp"

namespace seedmine::testing {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<index::Neighbor> brute_force_knn(const Corpus& corpus, const std::vector<double>& query, std::size_t k) {
  std::vector<index::Neighbor> all;
  all.reserve(corpus.ids.size());
  for (std::size_t i = 0; i < corpus.ids.size(); ++i) all.push_back({corpus.ids[i], dot(corpus.vectors[i], query)});
  std::sort(all.begin(), all.end(), [](const index::Neighbor& a, const index::Neighbor& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.id < b.id;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

std::vector<std::vector<float>> random_unit_vectors(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<float>> out(n, std::vector<float>(dim));
  for (auto& v : out) {
    std::vector<double> x(dim);
    double norm = 0.0;
    for (auto& c : x) {
      c = normal(gen);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) v[i] = static_cast<float>(x[i] / norm);
  }
  return out;
}

double recall(const std::vector<index::Neighbor>& approx, const std::vector<index::Neighbor>& exact) {
  if (exact.empty()) return 1.0;
  std::set<std::string> got;
  for (const auto& n : approx) got.insert(n.id);
  std::size_t hit = 0;
  for (const auto& n : exact) hit += got.count(n.id);
  return static_cast<double>(hit) / exact.size();
}

std::vector<miner::LabeledRecord> brute_force_mine(const Corpus& corpus, const std::vector<OracleSeed>& seeds,
                                                   std::size_t k, double t_sim, std::size_t cap) {
  // chunk -> label -> (similarity, seed id)
  std::map<std::string, std::map<std::string, std::vector<std::pair<double, std::string>>>> hits;
  for (const auto& s : seeds) {
    for (const auto& n : brute_force_knn(corpus, s.vector, k)) {
      if (n.similarity < t_sim) continue;
      for (const auto& d : s.domains) hits[n.id][d].emplace_back(n.similarity, s.id);
    }
  }
  std::vector<miner::LabeledRecord> out;
  for (auto& [chunk, by_label] : hits) {
    miner::LabeledRecord r;
    r.doc_id = chunk;
    for (auto& [label, list] : by_label) {
      r.labels.push_back(label);
      std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      list.erase(std::unique(list.begin(), list.end(),
                             [](const auto& a, const auto& b) { return a.second == b.second; }),
                 list.end());
      for (std::size_t i = 0; i < list.size() && i < cap; ++i) r.evidence.push_back({label, list[i].second, list[i].first});
    }
    out.push_back(std::move(r));
  }
  return out;
}

MiningFixture make_mining_fixture(std::size_t seeds_per_domain, std::uint64_t seed) {
  pipeline::FixtureOptions o;
  o.seed = seed;
  o.general_docs = 0;
  o.noise = false;
  o.seeds_per_domain = seeds_per_domain;

  MiningFixture f;
  f.fixture = pipeline::make_fixture(o);
  f.dim = o.embed_dim;
  embed::HashingEmbedder embedder(f.dim);

  std::vector<std::string> texts;
  for (const auto& d : f.fixture.docs) {
    for (const auto& ch : corpus::chunk_document(d.doc)) {
      f.chunk_ids.push_back(ch.id());
      texts.push_back(ch.text);
      if (d.kind == "mixed") f.mixed_chunk_ids.push_back(ch.id());
    }
  }
  for (const auto& v : embedder.embed_batch(texts)) f.chunk_vectors.push_back(v.to_float());

  seedgen::VocabularyGenerator llm(f.fixture.vocabularies, o.seed_words);
  seedgen::BatchOptions bo;
  bo.count = seeds_per_domain;
  bo.multi_domain_prob = o.multi_domain_prob;
  bo.seed = seed;
  bo.max_in_flight = 1;
  f.seeds = seedgen::generate_batch(f.fixture.domains, llm, bo).seeds;
  for (const auto& s : f.seeds) f.seed_vectors.push_back(embedder.embed(s.fields.document).to_float());
  return f;
}

Corpus as_corpus(const std::vector<std::string>& ids, const std::vector<std::vector<float>>& vectors) {
  Corpus c;
  c.ids = ids;
  for (const auto& v : vectors) c.vectors.emplace_back(v.begin(), v.end());
  return c;
}

std::vector<OracleSeed> as_oracle_seeds(const MiningFixture& f) {
  std::vector<OracleSeed> out;
  for (std::size_t i = 0; i < f.seeds.size(); ++i) {
    out.push_back({f.seeds[i].seed_id, f.seeds[i].spec.industries,
                   std::vector<double>(f.seed_vectors[i].begin(), f.seed_vectors[i].end())});
  }
  return out;
}

}  // namespace seedmine::testing
