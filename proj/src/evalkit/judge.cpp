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


#include "seedmine/evalkit/judge.hpp"

#include <algorithm>
#include <cstdio>

#include "seedmine/seedgen/dimensions.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/rng.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::evalkit {
namespace {

constexpr std::string_view kPredictionsHeader = "and respective scores:";

std::size_t ifind(std::string_view hay, std::string_view needle, std::size_t from = 0) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    if (text::iequals(hay.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

// Body between <TAG> and <\TAG> or </TAG>.
std::optional<std::string_view> tagged(std::string_view s, std::string_view tag) {
  const std::string open = "<" + std::string(tag) + ">";
  const auto b = ifind(s, open);
  if (b == std::string_view::npos) return std::nullopt;
  const std::size_t start = b + open.size();
  const auto e1 = ifind(s, "<\\" + std::string(tag) + ">", start);
  const auto e2 = ifind(s, "</" + std::string(tag) + ">", start);
  const auto e = std::min(e1, e2);
  if (e == std::string_view::npos) return std::nullopt;
  return s.substr(start, e - start);
}

// Quoted strings in order of appearance, single or double quotes.
std::vector<std::string> quoted_strings(std::string_view s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char q = s[i];
    if (q != '\'' && q != '"') continue;
    const auto end = s.find(q, i + 1);
    if (end == std::string_view::npos) throw Error(ErrorCode::kMalformedJudgement, "unterminated quote");
    out.emplace_back(s.substr(i + 1, end - i - 1));
    i = end;
  }
  return out;
}

std::optional<Rating> parse_rating(std::string_view r) {
  const std::string v = text::lowercase(text::trim(r));
  if (v == "agree" || v == "agreed") return Rating::kAgree;
  if (v == "disagree" || v == "disagreed") return Rating::kDisagree;
  return std::nullopt;
}

std::string canonical_label(std::string_view key) {
  const auto k = text::trim(key);
  if (seedgen::is_industry(k)) return std::string(k);
  if (auto ind = seedgen::industry_from_judge_name(k)) return *ind;
  return std::string(k);
}

}  // namespace

std::string_view to_string(Rating r) noexcept { return r == Rating::kAgree ? "agree" : "disagree"; }

JudgePrompt render_judge_prompt(std::string_view document, const std::vector<ScoredLabel>& predictions,
                                const std::vector<std::string>& domains, std::uint64_t shuffle_seed) {
  if (predictions.empty()) throw Error(ErrorCode::kPreconditionViolated, "judge prompt needs at least one prediction");
  JudgePrompt p;
  for (const auto& d : domains) p.domain_order.push_back(seedgen::judge_name(d));
  Rng rng(shuffle_seed);
  rng.shuffle(std::span<std::string>(p.domain_order));

  std::string& t = p.text;
  t += "Please act as an impartial judge and evaluate the industry domains assigned\n";
  t += "by a ML model to the document displayed below. The document belongs to one\n";
  t += "or more of the industry domains listed below:\n\n";
  for (const auto& d : p.domain_order) t += d + "\n";
  t += "\n[Document]\n[Start of document]\n";
  t += document;
  t += "\n[The End of document]\nML model predicted industry domains\n";
  t += kPredictionsHeader;
  t += "\n";
  for (const auto& pr : predictions) {
    char score[32];
    std::snprintf(score, sizeof score, "%.2f", pr.score);
    t += seedgen::judge_name(pr.label) + " : " + score + "\n";
  }
  t += "\nPlease judge the domains assigned by the ML model  by stating if you agree\n";
  t += "or disagree with them. Provide your reasoning for the judgement within\n";
  t += "<COMMENTS> reasoning <\\COMMENTS> tags.\n";
  t += "Please strictly follow the below\nformat for your judgement response.\n";
  t += "<Judgement>\n{'ML predicted domain' : 'rating'}\n<\\Judgement>\n\n";
  t += "for example:\n<COMMENTS> reasoning <\\COMMENTS>\n<Judgement>\n{'ML predicted domain': 'disagree'}\n<\\Judgement>\n";
  return p;
}

JudgeVerdict parse_judgement(std::string_view response, const std::vector<std::string>* expected) {
  const auto body = tagged(response, "Judgement");
  if (!body) throw Error(ErrorCode::kMalformedJudgement, "no <Judgement> block");
  const auto parts = quoted_strings(*body);
  if (parts.empty() || parts.size() % 2 != 0) {
    throw Error(ErrorCode::kMalformedJudgement, "judgement is not a {'domain': 'rating'} map");
  }
  JudgeVerdict v;
  for (std::size_t i = 0; i < parts.size(); i += 2) {
    const auto rating = parse_rating(parts[i + 1]);
    if (!rating) throw Error(ErrorCode::kMalformedJudgement, "unknown rating '" + parts[i + 1] + "'");
    const auto label = canonical_label(parts[i]);
    if (!v.ratings.emplace(label, *rating).second) {
      throw Error(ErrorCode::kMalformedJudgement, "domain rated twice: " + label);
    }
  }
  if (const auto c = tagged(response, "COMMENTS")) v.comments = std::string(text::trim(*c));

  if (expected) {
    std::map<std::string, Rating> kept;
    for (const auto& l : *expected) {
      const auto it = v.ratings.find(l);
      if (it == v.ratings.end()) throw Error(ErrorCode::kMalformedJudgement, "no rating for " + l);
      kept.emplace(l, it->second);
    }
    v.ratings = std::move(kept);
  }
  return v;
}

AgreementStats agreement_stats(const std::vector<JudgeVerdict>& verdicts) {
  if (verdicts.empty()) throw Error(ErrorCode::kPreconditionViolated, "no verdicts");
  AgreementStats s;
  for (const auto& v : verdicts) {
    for (const auto& [label, r] : v.ratings) {
      auto& d = s.per_domain[label];
      (r == Rating::kAgree ? d.agree : d.disagree) += 1;
      s.agree += r == Rating::kAgree ? 1 : 0;
      ++s.total;
    }
  }
  for (auto& [label, d] : s.per_domain) {
    d.percent = 100.0 * static_cast<double>(d.agree) / static_cast<double>(d.agree + d.disagree);
  }
  s.overall_percent = s.total == 0 ? 0.0 : 100.0 * static_cast<double>(s.agree) / static_cast<double>(s.total);
  return s;
}

JudgeVerdict judge_document(const std::string& doc_id, std::string_view text, const std::vector<ScoredLabel>& predictions,
                            const std::vector<std::string>& domains, const seedgen::TextGenerator& llm,
                            std::uint64_t seed, int max_retries) {
  const auto prompt = render_judge_prompt(text, predictions, domains, hash_combine(seed, fnv1a64(doc_id)));
  std::vector<std::string> expected;
  for (const auto& p : predictions) expected.push_back(p.label);
  std::string problem;
  for (int attempt = 0; attempt <= std::max(0, max_retries); ++attempt) {
    const auto reply = llm.complete({prompt.text, 512, 0.0});
    try {
      auto v = parse_judgement(reply, &expected);
      v.doc_id = doc_id;
      v.shuffled_domain_order = prompt.domain_order;
      return v;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedJudgement) throw;
      problem = e.what();
    }
  }
  throw Error(ErrorCode::kMalformedJudgement, problem);
}

StubJudge::StubJudge(std::set<std::string> disagree_with) : disagree_with_(std::move(disagree_with)) {}

std::string StubJudge::complete(const seedgen::GenerationRequest& request) const {
  const std::string_view prompt = request.prompt;
  const auto at = prompt.find(kPredictionsHeader);
  if (at == std::string_view::npos) return "I cannot judge this.";
  std::string map;
  for (auto line : text::split_lines(prompt.substr(at + kPredictionsHeader.size()))) {
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) {
      if (map.empty()) continue;
      break;
    }
    const auto sep = trimmed.find(" : ");
    if (sep == std::string_view::npos) break;
    const std::string name(trimmed.substr(0, sep));
    if (!map.empty()) map += ", ";
    map += "'" + name + "': '" + (disagree_with_.contains(name) ? "disagree" : "agree") + "'";
  }
  return "<COMMENTS> The listed domains match the vocabulary of the document. <\\COMMENTS>\n<Judgement>\n{" + map +
         "}\n<\\Judgement>\n";
}

nlohmann::json to_json(const JudgeVerdict& v) {
  nlohmann::json ratings = nlohmann::json::object();
  for (const auto& [l, r] : v.ratings) ratings[l] = std::string(to_string(r));
  return nlohmann::json{{"doc_id", v.doc_id},
                        {"ratings", ratings},
                        {"comments", v.comments},
                        {"shuffled_domain_order", v.shuffled_domain_order}};
}

JudgeVerdict verdict_from_json(const nlohmann::json& j) {
  try {
    JudgeVerdict v;
    v.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& [l, r] : j.at("ratings").items()) {
      const auto rating = parse_rating(r.get<std::string>());
      if (!rating) throw Error(ErrorCode::kMalformedRecord, "bad rating in verdict");
      v.ratings.emplace(l, *rating);
    }
    v.comments = j.value("comments", std::string{});
    v.shuffled_domain_order = j.value("shuffled_domain_order", std::vector<std::string>{});
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("bad verdict: ") + e.what());
  }
}

nlohmann::json to_json(const AgreementStats& s) {
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [l, d] : s.per_domain) {
    per[l] = {{"agree", d.agree}, {"disagree", d.disagree}, {"percent", d.percent}};
  }
  return nlohmann::json{
      {"per_domain", per}, {"agree", s.agree}, {"total", s.total}, {"overall_percent", s.overall_percent}};
}

}  // namespace seedmine::evalkit
