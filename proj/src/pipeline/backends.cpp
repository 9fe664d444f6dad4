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


#include "seedmine/pipeline/backends.hpp"

#include <set>

#include "seedmine/evalkit/judge.hpp"

namespace seedmine::pipeline {

std::unique_ptr<embed::Embedder> make_embedder(const EmbedConfig& c) {
  if (c.service.backend == Backend::kStub) return std::make_unique<embed::HashingEmbedder>(c.dim);
  embed::RemoteEmbedderOptions o;
  o.url = c.service.url;
  o.dim = c.dim;
  o.batch_size = c.batch_size;
  o.max_in_flight = c.max_in_flight;
  o.retry = c.service.retry;
  o.bearer_token = c.service.bearer_token();
  return std::make_unique<embed::RemoteEmbedder>(std::move(o));
}

std::unique_ptr<seedgen::TextGenerator> make_generator(const SeedgenConfig& c) {
  if (c.service.backend == Backend::kRemote) {
    return std::make_unique<seedgen::RemoteGenerator>(
        seedgen::RemoteGeneratorOptions{c.service.url, c.service.retry, c.service.bearer_token()});
  }
  if (c.stub_kind == "canned") {
    const auto mode = c.canned_mode == "round_robin" ? seedgen::CannedGenerator::Mode::kRoundRobin
                                                     : seedgen::CannedGenerator::Mode::kPromptHash;
    return std::make_unique<seedgen::CannedGenerator>(c.canned, mode);
  }
  return std::make_unique<seedgen::VocabularyGenerator>(c.vocabularies, c.document_words);
}

std::unique_ptr<seedgen::TextGenerator> make_judge(const JudgeConfig& c) {
  if (c.service.backend == Backend::kRemote) {
    return std::make_unique<seedgen::RemoteGenerator>(
        seedgen::RemoteGeneratorOptions{c.service.url, c.service.retry, c.service.bearer_token()});
  }
  return std::make_unique<evalkit::StubJudge>(std::set<std::string>(c.stub_disagree.begin(), c.stub_disagree.end()));
}

}  // namespace seedmine::pipeline
