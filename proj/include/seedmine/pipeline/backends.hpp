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

#include <memory>

#include "seedmine/embed/embedder.hpp"
#include "seedmine/pipeline/config.hpp"
#include "seedmine/seedgen/generator.hpp"

namespace seedmine::pipeline {

// Stub backends are the hashing embedder, the vocabulary or canned
// generator and the stub judge; remote ones are HTTP clients.
std::unique_ptr<embed::Embedder> make_embedder(const EmbedConfig& c);
std::unique_ptr<seedgen::TextGenerator> make_generator(const SeedgenConfig& c);
std::unique_ptr<seedgen::TextGenerator> make_judge(const JudgeConfig& c);

}  // namespace seedmine::pipeline
