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
#include <string>
#include <vector>

#include "seedmine/seedgen/generator.hpp"
#include "seedmine/seedgen/seed.hpp"

namespace seedmine::seedgen {

struct GenerateOptions {
  int max_parse_retries = 2;  // extra attempts after an unparseable reply
  int max_tokens = 4096;
  double temperature = 1.0;
};

// Renders, completes and parses one spec. Unparseable replies are retried
// with the same prompt; after the retries, throws UnparseableGeneration.
// Backend failures propagate as GenerationUnavailable.
SeedDocument generate(const SeedSpec& spec, const TextGenerator& llm, const GenerateOptions& options = {});

struct BatchOptions {
  std::size_t count = 200;  // seeds per domain
  double multi_domain_prob = 0.1;
  std::uint64_t seed = 42;
  double max_failure_rate = 0.5;
  std::size_t max_in_flight = 4;
  GenerateOptions generate;
};

struct BatchResult {
  std::vector<SeedDocument> seeds;  // sorted by (domain, spec.rng_seed)
  std::size_t attempts = 0;
  std::size_t failures = 0;
};

// `count` seeds per domain. Each domain's specs are drawn with that domain
// first and the partner (if any) from `domains`; the spec seed of attempt i
// is derived from (seed, domain, i). Failed attempts are skipped and
// counted; if a domain cannot reach `count` within
// ceil(count / (1 - max_failure_rate)) attempts, throws
// GenerationUnavailable. Output does not depend on max_in_flight.
BatchResult generate_batch(const std::vector<std::string>& domains, const TextGenerator& llm,
                           const BatchOptions& options);

// Stable id for a seed: "<domain slug>-<hex spec seed>".
std::string make_seed_id(const std::string& domain, std::uint64_t rng_seed);

}  // namespace seedmine::seedgen
