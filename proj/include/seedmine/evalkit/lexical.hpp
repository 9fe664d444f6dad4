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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace seedmine::evalkit {

inline constexpr std::size_t kTtrWindow = 1000;
inline constexpr double kMtldThreshold = 0.72;

// Whitespace tokens, lowercased, with leading and trailing punctuation
// stripped; tokens left empty are dropped.
std::vector<std::string> word_tokens(std::string_view text);

// Vowel groups (a e i o u y), minus a silent trailing "e" unless the word
// ends in consonant + "le"; at least 1.
int count_syllables(std::string_view word);

// Type-token ratio over the first kTtrWindow tokens. Throws EmptyText.
double lexical_diversity(std::string_view text);
// 0.39 * words/sentences + 11.8 * syllables/words - 15.59. Throws EmptyText.
double flesch_kincaid_grade(std::string_view text);
// Types seen exactly once over all types. Throws EmptyText.
double hapax_ratio(std::string_view text);
// Mean of the forward and backward MTLD passes. A factor closes when the
// running TTR drops strictly below the threshold; the leftover segment adds
// (1 - TTR) / (1 - threshold); each pass divides the token count by
// max(1, factors). Throws TooShort below 10 tokens.
double mtld(std::string_view text, double ttr_threshold = kMtldThreshold);
double mtld(const std::vector<std::string>& tokens, double ttr_threshold = kMtldThreshold);

struct LexicalReport {
  double lexical_diversity = 0.0;
  double flesch_kincaid_grade = 0.0;
  double hapax_ratio = 0.0;
  std::optional<double> mtld;  // absent for texts under 10 tokens
  std::size_t token_count = 0;
};

LexicalReport lexical_report(std::string_view text);

struct MetricSummary {
  double real = 0.0;
  double synthetic = 0.0;
  double delta = 0.0;  // |real - synthetic|
  std::size_t real_n = 0;
  std::size_t synthetic_n = 0;
};

struct CorpusComparison {
  MetricSummary ttr;
  MetricSummary fk_grade;
  MetricSummary hapax;
  MetricSummary mtld;
};

// Per-metric means over the documents where the metric is defined. Throws
// PreconditionViolated when either side is empty.
CorpusComparison compare_corpora(const std::vector<std::string>& real, const std::vector<std::string>& synthetic);
nlohmann::json to_json(const CorpusComparison& c);
// Fixed-width text table with rows TTR-1000, FK-Grade, Hapax, MTLD.
std::string render_table(const CorpusComparison& c);

}  // namespace seedmine::evalkit
