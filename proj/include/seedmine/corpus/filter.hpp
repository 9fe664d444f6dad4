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

#include <json.hpp>

#include "seedmine/corpus/types.hpp"

namespace seedmine::corpus {

// Gopher-style quality heuristics. The minimum-token rule always runs; the
// others can be loosened through configuration.
struct FilterRules {
  std::size_t min_tokens = 20;
  std::size_t max_words = 200000;
  double min_mean_word_length = 3.0;
  double max_mean_word_length = 10.0;
  double max_symbol_ratio = 0.1;        // '#' per word, and ellipses per word
  double min_alpha_word_ratio = 0.8;    // words with at least one letter
  double max_bullet_line_ratio = 0.9;
  double max_ellipsis_line_ratio = 0.3;

  void validate() const;
};

void from_json(const nlohmann::json& j, FilterRules& rules);
void to_json(nlohmann::json& j, const FilterRules& rules);

// Rules are checked in this order and the first failure is reported:
// min_tokens, word_count_range, mean_word_length, alpha_word_ratio,
// symbol_ratio, bullet_ratio, ellipsis_ratio.
FilterVerdict quality_filter(const Document& doc, const FilterRules& rules);

}  // namespace seedmine::corpus
