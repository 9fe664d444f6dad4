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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "seedmine/util/http.hpp"
#include "seedmine/util/rng.hpp"

namespace seedmine::seedgen {

struct GenerationRequest {
  std::string prompt;
  int max_tokens = 4096;
  double temperature = 1.0;
};

// Text-generation backend shared by seed generation and the judge. Must be
// safe to call from several threads. Failures to reach the backend surface
// as GenerationUnavailable.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string complete(const GenerationRequest& request) const = 0;
};

// Offline backend over a fixed list of completions, chosen either in call
// order or by a hash of the prompt (stable across runs and threads).
class CannedGenerator final : public TextGenerator {
 public:
  enum class Mode { kRoundRobin, kPromptHash };

  CannedGenerator(std::vector<std::string> completions, Mode mode);
  std::string complete(const GenerationRequest& request) const override;

 private:
  std::vector<std::string> completions_;
  Mode mode_;
  mutable std::atomic<std::size_t> next_{0};
};

// Offline backend that writes documents from per-industry word lists. It
// finds which configured industries the prompt is about (by their prompt
// names on the first line) and fills DOCUMENT with words drawn evenly from
// those vocabularies, seeded by the prompt hash. Used by hermetic runs,
// where it stands in for a real model with a known ground truth.
class VocabularyGenerator final : public TextGenerator {
 public:
  VocabularyGenerator(std::map<std::string, std::vector<std::string>> vocabularies, std::size_t document_words);
  std::string complete(const GenerationRequest& request) const override;

 private:
  std::map<std::string, std::vector<std::string>> vocabularies_;  // industry -> words
  std::size_t document_words_;
};

// `words` words drawn uniformly, position i from vocabs[i % size], grouped
// into capitalized twelve-word sentences.
std::string vocabulary_text(Rng& rng, const std::vector<const std::vector<std::string>*>& vocabs,
                            std::size_t words);

struct RemoteGeneratorOptions {
  std::string url;
  http::RetryPolicy retry;
  std::string bearer_token;
};

// Wire contract: request {"prompt", "max_tokens", "temperature"},
// response {"text"}.
class RemoteGenerator final : public TextGenerator {
 public:
  explicit RemoteGenerator(RemoteGeneratorOptions options);
  std::string complete(const GenerationRequest& request) const override;

 private:
  RemoteGeneratorOptions options_;
  http::Endpoint endpoint_;
};

}  // namespace seedmine::seedgen
