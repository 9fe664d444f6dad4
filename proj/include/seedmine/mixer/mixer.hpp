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
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "seedmine/corpus/types.hpp"

namespace seedmine::mixer {

inline constexpr double kDefaultTolerance = 0.005;

struct PoolDoc {
  std::string id;
  std::size_t tokens = 0;
};

struct TokenCounts {
  std::vector<PoolDoc> docs;
  std::size_t total = 0;
};

// Whitespace token counts, the same tokenizer the corpus stage uses.
TokenCounts count_tokens(const std::vector<corpus::Document>& docs);
// Newline-delimited {id, text} records; malformed lines throw MalformedRecord.
TokenCounts count_tokens(std::istream& records);

struct Selection {
  std::string id;
  std::size_t tokens = 0;
  bool repeated = false;  // drawn again after the pool ran out

  friend bool operator==(const Selection&, const Selection&) = default;
};

struct MixOptions {
  std::size_t target_total_tokens = 0;
  double domain_fraction = 0.25;
  std::uint64_t seed = 42;
  bool allow_repetition = false;
  double tolerance = kDefaultTolerance;
};

struct MixPlan {
  MixOptions options;
  std::vector<Selection> domain;
  std::vector<Selection> general;
  std::size_t domain_tokens = 0;
  std::size_t general_tokens = 0;
  double achieved_fraction = 0.0;
};

// The domain side gets round(fraction * total) tokens and the general side
// the rest. Each side walks its own seeded permutation of its pool and takes
// documents until its budget is met, so the last document may overshoot.
// Without repetition an exhausted pool throws InsufficientDomainTokens or
// InsufficientGeneralTokens; with it, a fresh permutation is walked and the
// reused documents are flagged. Throws ToleranceExceeded when the achieved
// domain share misses the fraction by more than the tolerance.
MixPlan plan_mix(const std::vector<PoolDoc>& domain_pool, const std::vector<PoolDoc>& general_pool,
                 const MixOptions& options);

enum class MixSource { kDomain, kGeneral };
std::string_view to_string(MixSource s) noexcept;

using DocStore = std::unordered_map<std::string, corpus::Document>;

// Visits every selected document once per selection, domain and general
// interleaved by a seeded shuffle. Throws MissingDocument naming the first
// id absent from its store (checked before anything is emitted).
void emit_mix(const MixPlan& plan, const DocStore& domain_store, const DocStore& general_store,
              const std::function<void(const corpus::Document&, MixSource)>& sink);

// emit_mix into newline-delimited records with an added "mix_source" field.
// Returns the number of records written.
std::size_t write_mix(const MixPlan& plan, const DocStore& domain_store, const DocStore& general_store,
                      std::ostream& out);

nlohmann::json to_json(const MixPlan& plan);

}  // namespace seedmine::mixer
