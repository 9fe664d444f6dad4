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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seedmine/seedgen/generator.hpp"

namespace seedmine::evalkit {

enum class Rating { kAgree, kDisagree };
std::string_view to_string(Rating r) noexcept;

struct ScoredLabel {
  std::string label;  // canonical industry name
  double score = 0.0;
};

struct JudgePrompt {
  std::string text;
  std::vector<std::string> domain_order;  // judge names, as listed in the prompt
};

// Fills the impartial-judge template. The domain list is shuffled with
// `shuffle_seed`; predictions are listed as "<judge name> : <score, 2 dp>".
// Throws PreconditionViolated without predictions.
JudgePrompt render_judge_prompt(std::string_view document, const std::vector<ScoredLabel>& predictions,
                                const std::vector<std::string>& domains, std::uint64_t shuffle_seed);

struct JudgeVerdict {
  std::string doc_id;
  std::map<std::string, Rating> ratings;  // canonical label -> rating
  std::string comments;
  std::vector<std::string> shuffled_domain_order;
};

// Reads the {'domain': 'rating'} map between <Judgement> and its closing
// tag (either <\Judgement> or </Judgement>) and the text between the
// COMMENTS tags. Keys may be judge names or canonical industry names;
// ratings are case-insensitive agree/disagree. Throws MalformedJudgement.
// When `expected` is given, every expected label must be rated and only
// those ratings are kept.
JudgeVerdict parse_judgement(std::string_view response, const std::vector<std::string>* expected = nullptr);

struct DomainAgreement {
  std::size_t agree = 0;
  std::size_t disagree = 0;
  double percent = 0.0;
};

struct AgreementStats {
  std::map<std::string, DomainAgreement> per_domain;
  std::size_t agree = 0;
  std::size_t total = 0;
  double overall_percent = 0.0;
};

// Percent agreement per domain and pooled over every (doc, label) rating.
// Throws PreconditionViolated for an empty input.
AgreementStats agreement_stats(const std::vector<JudgeVerdict>& verdicts);

// Renders, asks, parses. Unparseable replies are retried up to
// `max_retries` times before MalformedJudgement is thrown.
JudgeVerdict judge_document(const std::string& doc_id, std::string_view text, const std::vector<ScoredLabel>& predictions,
                            const std::vector<std::string>& domains, const seedgen::TextGenerator& llm,
                            std::uint64_t seed, int max_retries = 2);

// Offline judge: rates every predicted domain in the prompt "agree", except
// judge names listed in `disagree_with`.
class StubJudge final : public seedgen::TextGenerator {
 public:
  explicit StubJudge(std::set<std::string> disagree_with = {});
  std::string complete(const seedgen::GenerationRequest& request) const override;

 private:
  std::set<std::string> disagree_with_;
};

nlohmann::json to_json(const JudgeVerdict& v);
JudgeVerdict verdict_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AgreementStats& s);

}  // namespace seedmine::evalkit
