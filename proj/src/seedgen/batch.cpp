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


#include "seedmine/seedgen/batch.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include <spdlog/spdlog.h>

#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"

namespace seedmine::seedgen {

std::string make_seed_id(const std::string& domain, std::uint64_t rng_seed) {
  return slug(domain) + "-" + to_hex(rng_seed);
}

SeedDocument generate(const SeedSpec& spec, const TextGenerator& llm, const GenerateOptions& options) {
  const GenerationRequest request{render_prompt(spec), options.max_tokens, options.temperature};
  std::string last_problem;
  for (int attempt = 0; attempt <= std::max(0, options.max_parse_retries); ++attempt) {
    std::string raw = llm.complete(request);
    try {
      SeedDocument seed;
      seed.fields = parse_generation(raw);
      seed.spec = spec;
      seed.raw = std::move(raw);
      seed.domain = spec.industries.front();
      seed.seed_id = make_seed_id(seed.domain, spec.rng_seed);
      return seed;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMissingField) throw;
      last_problem = e.what();
    }
  }
  throw Error(ErrorCode::kUnparseableGeneration, last_problem);
}

BatchResult generate_batch(const std::vector<std::string>& domains, const TextGenerator& llm,
                           const BatchOptions& options) {
  if (options.count == 0) throw Error(ErrorCode::kInvalidParams, "count must be >= 1");
  if (!(options.max_failure_rate >= 0.0 && options.max_failure_rate < 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "max_failure_rate must lie in [0, 1)");
  }
  for (const auto& d : domains) require_industry(d);
  const auto budget =
      static_cast<std::size_t>(std::ceil(static_cast<double>(options.count) / (1.0 - options.max_failure_rate)));

  BatchResult result;
  for (const auto& domain : domains) {
    const std::uint64_t domain_seed = hash_combine(options.seed, fnv1a64(domain));
    std::vector<SeedDocument> kept;
    std::size_t next_attempt = 0;
    while (kept.size() < options.count) {
      const std::size_t wave = std::min(options.count - kept.size(), budget - next_attempt);
      if (wave == 0) {
        throw Error(ErrorCode::kGenerationUnavailable,
                    "domain " + domain + ": only " + std::to_string(kept.size()) + " of " +
                        std::to_string(options.count) + " seeds after " + std::to_string(next_attempt) + " attempts");
      }
      std::vector<std::optional<SeedDocument>> slots(wave);
      std::vector<std::string> errors(wave);
      std::atomic<std::size_t> cursor{0};
      auto worker = [&] {
        for (std::size_t i = cursor++; i < wave; i = cursor++) {
          const std::uint64_t spec_seed = hash_combine(domain_seed, next_attempt + i);
          try {
            const auto spec = sample_spec(spec_seed, domains, options.multi_domain_prob, domain);
            slots[i] = generate(spec, llm, options.generate);
          } catch (const Error& e) {
            errors[i] = e.what();
          }
        }
      };
      const std::size_t n_threads = std::max<std::size_t>(1, std::min(options.max_in_flight, wave));
      std::vector<std::thread> pool;
      for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      for (std::size_t i = 0; i < wave; ++i) {
        if (slots[i]) {
          kept.push_back(std::move(*slots[i]));
        } else {
          ++result.failures;
          spdlog::warn("seed generation failed for {} (attempt {}): {}", domain, next_attempt + i, errors[i]);
        }
      }
      next_attempt += wave;
    }
    result.attempts += next_attempt;
    for (auto& s : kept) result.seeds.push_back(std::move(s));
  }

  std::sort(result.seeds.begin(), result.seeds.end(), [](const SeedDocument& a, const SeedDocument& b) {
    if (a.domain != b.domain) return a.domain < b.domain;
    return a.spec.rng_seed < b.spec.rng_seed;
  });
  return result;
}

}  // namespace seedmine::seedgen
