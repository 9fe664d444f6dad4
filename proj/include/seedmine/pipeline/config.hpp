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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "seedmine/classifier/model.hpp"
#include "seedmine/corpus/filter.hpp"
#include "seedmine/index/hnsw.hpp"
#include "seedmine/miner/miner.hpp"
#include "seedmine/util/http.hpp"

namespace seedmine::pipeline {

enum class Backend { kStub, kRemote };

// Connection settings for one remote service. The bearer token is read from
// the environment variable named by token_env, never from the file.
struct ServiceConfig {
  Backend backend = Backend::kStub;
  std::string url;
  std::string token_env;
  http::RetryPolicy retry;

  std::string bearer_token() const;
};

struct IngestConfig {
  corpus::FilterRules filter;
  std::size_t subdoc_threshold = 2;
  std::size_t max_chunk_words = 2500;
};

struct EmbedConfig {
  ServiceConfig service;
  std::size_t dim = 1024;
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
};

struct SeedgenConfig {
  ServiceConfig service;
  std::vector<std::string> domains;
  std::size_t count = 200;
  double multi_domain_prob = 0.1;
  double max_failure_rate = 0.5;
  int max_parse_retries = 2;
  std::size_t max_in_flight = 4;
  int max_tokens = 4096;
  double temperature = 1.0;
  // Stub backend: "vocabulary" (word lists per industry) or "canned".
  std::string stub_kind = "vocabulary";
  std::map<std::string, std::vector<std::string>> vocabularies;
  std::size_t document_words = 800;
  std::vector<std::string> canned;
  std::string canned_mode = "prompt_hash";
};

struct MineConfig {
  miner::MiningParams params;
  std::size_t threads = 1;
};

struct TrainConfig {
  miner::SplitFractions split;
  std::size_t min_per_label = 10;
  double negative_ratio = 1.0;  // negatives per mined record
  classifier::Hyperparams hyper;
};

struct ClassifyConfig {
  double threshold = 0.5;
  std::size_t threads = 1;
};

struct MetricsConfig {
  std::size_t max_real_docs = 500;
};

struct JudgeConfig {
  ServiceConfig service;
  std::size_t sample_size = 200;
  int max_retries = 2;
  std::size_t max_in_flight = 4;
  std::vector<std::string> stub_disagree;  // judge names the stub rejects
};

struct MixConfig {
  std::string domain;  // defaults to the first seedgen domain
  double domain_fraction = 0.25;
  std::size_t target_total_tokens = 0;  // 0: largest feasible total, less 10%
  bool allow_repetition = false;
  double tolerance = 0.005;
};

// Resolved artifact locations. Relative paths in the file are taken from
// the directory holding the config file.
struct Paths {
  std::filesystem::path root;
  std::filesystem::path corpus;
  std::filesystem::path work;
  std::filesystem::path reports;

  std::filesystem::path docs() const { return work / "docs.jsonl"; }
  std::filesystem::path chunks() const { return work / "chunks.jsonl"; }
  std::filesystem::path rejects() const { return work / "rejects.jsonl"; }
  std::filesystem::path embeddings() const { return work / "embeddings.bin"; }
  std::filesystem::path index() const { return work / "index.hnsw"; }
  std::filesystem::path seeds() const { return work / "seeds.jsonl"; }
  std::filesystem::path labeled() const { return work / "labeled.jsonl"; }
  std::filesystem::path doc_labels() const { return work / "doc_labels.jsonl"; }
  std::filesystem::path model() const { return work / "model.bin"; }
  std::filesystem::path test_eval() const { return work / "test_eval.json"; }
  std::filesystem::path classified() const { return work / "classified.jsonl"; }
  std::filesystem::path metrics() const { return work / "metrics.json"; }
  std::filesystem::path metrics_table() const { return work / "metrics.txt"; }
  std::filesystem::path verdicts() const { return work / "verdicts.jsonl"; }
  std::filesystem::path agreement() const { return work / "agreement.json"; }
  std::filesystem::path mix_manifest() const { return work / "mix_manifest.json"; }
  std::filesystem::path mix() const { return work / "mix.jsonl"; }
  std::filesystem::path lock() const { return root / ".seedmine.lock"; }
  std::filesystem::path report(const std::string& stage) const { return reports / (stage + ".json"); }
};

struct PipelineConfig {
  nlohmann::json raw;  // merged document, after overrides
  std::uint64_t seed = 42;
  Paths paths;
  IngestConfig ingest;
  EmbedConfig embed;
  index::IndexParams index;
  SeedgenConfig seedgen;
  MineConfig mine;
  TrainConfig train;
  ClassifyConfig classify;
  MetricsConfig metrics;
  JudgeConfig judge;
  MixConfig mix;

  // The raw JSON of one top-level section ("null" when absent).
  nlohmann::json section(const std::string& name) const;
};

// "a.b.c=value": value is parsed as JSON when it parses, else taken as a
// string. Throws ConfigError for a missing '=' or an empty key.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Decodes and validates. Every failure is a ConfigError naming the key.
PipelineConfig decode_config(nlohmann::json raw, const std::filesystem::path& root);

PipelineConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {},
                           std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace seedmine::pipeline
