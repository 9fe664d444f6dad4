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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedmine/corpus/types.hpp"
#include "seedmine/miner/miner.hpp"

namespace seedmine::pipeline {

// Synthetic corpus with a known answer. Each domain writes from its own
// word list (the lists are disjoint), mixed documents alternate the words
// of two domains, and general documents use a fourth list that no seed
// ever draws from.
struct FixtureOptions {
  std::uint64_t seed = 7;
  std::size_t pure_per_domain = 400;
  std::size_t mixed_per_pair = 100;
  std::size_t general_docs = 300;
  std::size_t words_per_doc = 300;
  std::size_t seeds_per_domain = 200;
  std::size_t seed_words = 800;
  double multi_domain_prob = 0.3;
  std::size_t embed_dim = 512;
  // Exact duplicates, short and symbol-heavy documents, a repeated
  // boilerplate paragraph and a few malformed lines.
  bool noise = true;
};

struct FixtureDoc {
  corpus::Document doc;
  std::vector<std::string> truth;  // sorted domains; duplicates inherit their source's
  std::string kind;                // pure, mixed, general, duplicate, short, symbols
};

struct Fixture {
  FixtureOptions options;
  std::vector<std::string> domains;
  std::map<std::string, std::vector<std::string>> vocabularies;
  std::vector<std::string> general_vocabulary;
  std::vector<FixtureDoc> docs;
  std::vector<std::string> malformed_lines;

  // Pipeline config using stub backends throughout.
  nlohmann::json config() const;
  // doc id -> domains, for every document with a nonempty truth.
  std::map<std::string, std::vector<std::string>> truth() const;
};

Fixture make_fixture(const FixtureOptions& options = {});

// Writes corpus.jsonl, truth.jsonl and seedmine.json into `dir`.
void write_fixture(const Fixture& fixture, const std::filesystem::path& dir);

std::map<std::string, std::vector<std::string>> read_truth(const std::filesystem::path& path);

struct LabelAccuracy {
  std::size_t predicted_pairs = 0;
  std::size_t correct_pairs = 0;
  std::size_t truth_pairs = 0;
  double precision = 0.0;  // 1 when nothing was predicted
  double recall = 0.0;     // 1 when there was nothing to find
};

// Compares (document, label) pairs of mined chunk records, rolled up to
// their parent documents, with the fixture truth.
LabelAccuracy score_against_truth(const std::vector<miner::LabeledRecord>& records,
                                  const std::map<std::string, std::vector<std::string>>& truth);

}  // namespace seedmine::pipeline
