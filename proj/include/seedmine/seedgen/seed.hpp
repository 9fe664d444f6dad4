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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seedmine/seedgen/dimensions.hpp"

namespace seedmine::seedgen {

struct SeedSpec {
  std::string doc_type;
  std::vector<std::string> industries;  // 1 or 2 distinct names
  Length length = Length::kShort;
  std::string demeanor;
  std::uint64_t rng_seed = 0;

  // Throws InvalidParams or UnknownDomain.
  void validate() const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// The six sections of a generation, in response-format order.
struct GenerationFields {
  std::string topic;
  std::string premise;
  std::string author;
  std::string audience;
  std::string motive;
  std::string document;

  friend bool operator==(const GenerationFields&, const GenerationFields&) = default;
};

inline constexpr std::array<std::string_view, 6> kFieldNames = {"TOPIC",    "PREMISE", "AUTHOR",
                                                                 "AUDIENCE", "MOTIVE",  "DOCUMENT"};

struct SeedDocument {
  SeedSpec spec;
  GenerationFields fields;
  std::string raw;
  std::string seed_id;
  std::string domain;  // the domain this seed was generated for
};

// Draw order: doc_type, first industry (or `primary` when given), the
// multi-domain coin, the second industry (uniform over `domains` minus the
// first; skipped when none is left), length, demeanor. Each draw is uniform.
// Deterministic in rng_seed. Throws UnknownDomain or InvalidParams.
SeedSpec sample_spec(std::uint64_t rng_seed, const std::vector<std::string>& domains, double multi_domain_prob,
                     const std::optional<std::string>& primary = std::nullopt);

std::string render_prompt(const SeedSpec& spec);

// Header scan, case-insensitive, tolerant of leading dashes, bullets,
// asterisks and whitespace; only the first occurrence of each header
// counts. Once DOCUMENT has started, a header line ends it only while some
// other field is still missing, so the document body may itself contain
// "Topic:"-like lines. Throws MissingField naming the first absent or empty
// field.
GenerationFields parse_generation(std::string_view text);

nlohmann::json to_json(const SeedSpec& spec);
SeedSpec spec_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SeedDocument& seed);
SeedDocument seed_from_json(const nlohmann::json& j);

}  // namespace seedmine::seedgen
