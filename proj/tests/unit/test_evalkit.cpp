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


#include <doctest.h>

#include <random>
#include <set>

#include "seedmine/evalkit/judge.hpp"
#include "seedmine/evalkit/lexical.hpp"
#include "seedmine/seedgen/dimensions.hpp"
#include "seedmine/util/error.hpp"

using namespace seedmine;
using namespace seedmine::evalkit;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIoFailure;
}

double mtld_pass(const std::vector<std::string>& tokens, double threshold) {
  double factors = 0.0;
  std::set<std::string> types;
  std::size_t count = 0;
  for (const auto& t : tokens) {
    ++count;
    types.insert(t);
    if (static_cast<double>(types.size()) / count < threshold) {
      factors += 1.0;
      types.clear();
      count = 0;
    }
  }
  if (count > 0) factors += (1.0 - static_cast<double>(types.size()) / count) / (1.0 - threshold);
  return tokens.size() / std::max(1.0, factors);
}

double mtld_oracle(std::vector<std::string> tokens, double threshold = 0.72) {
  const double fwd = mtld_pass(tokens, threshold);
  std::reverse(tokens.begin(), tokens.end());
  return (fwd + mtld_pass(tokens, threshold)) / 2.0;
}

// A prediction list rated by a canned reply.
class ReplyJudge final : public seedgen::TextGenerator {
 public:
  explicit ReplyJudge(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const seedgen::GenerationRequest&) const override {
    const auto i = std::min<std::size_t>(calls++, replies_.size() - 1);
    return replies_[i];
  }
  mutable std::size_t calls = 0;

 private:
  std::vector<std::string> replies_;
};

const std::vector<std::string> kDomains = {"Financial Services", "Healthcare & Life Sciences", "Sports"};

}  // namespace

TEST_CASE("word tokens and syllables") {
  CHECK(word_tokens("  \"Hello,\" said (Bob)... -- ok") == std::vector<std::string>{"hello", "said", "bob", "ok"});
  CHECK(count_syllables("cat") == 1);
  CHECK(count_syllables("make") == 1);
  CHECK(count_syllables("the") == 1);
  CHECK(count_syllables("table") == 2);
  CHECK(count_syllables("apple") == 2);
  CHECK(count_syllables("reading") == 2);
  CHECK(count_syllables("beautiful") == 3);
  CHECK(count_syllables("rhythm") == 1);
  CHECK(count_syllables("syllable") == 3);
  CHECK(count_syllables("xyz") >= 1);
}

TEST_CASE("readability and diversity on hand-computed texts") {
  CHECK(flesch_kincaid_grade("The cat sat.") == doctest::Approx(0.39 * 3 + 11.8 * 1 - 15.59));
  CHECK(flesch_kincaid_grade("The cat sat. The dog ran away.") ==
        doctest::Approx(0.39 * 3.5 + 11.8 * (8.0 / 7) - 15.59));
  CHECK(lexical_diversity("a b a b") == doctest::Approx(0.5));
  CHECK(hapax_ratio("a b a c") == doctest::Approx(2.0 / 3));
  CHECK(code_of([] { lexical_diversity(" "); }) == ErrorCode::kEmptyText);
  CHECK(code_of([] { hapax_ratio("... --"); }) == ErrorCode::kEmptyText);
  CHECK(code_of([] { flesch_kincaid_grade(""); }) == ErrorCode::kEmptyText);

  std::string long_text;
  for (int i = 0; i < 1500; ++i) long_text += "w" + std::to_string(i % 1200) + " ";
  CHECK(lexical_diversity(long_text) == doctest::Approx(1.0));  // only the first 1000 count
}

TEST_CASE("mtld agrees with a direct transcription") {
  std::mt19937 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> vocab(2, 60), len(10, 400);
    const int v = vocab(gen), n = len(gen);
    std::vector<std::string> tokens;
    for (int i = 0; i < n; ++i) tokens.push_back("t" + std::to_string(gen() % v));
    CHECK(mtld(tokens) == doctest::Approx(mtld_oracle(tokens)).epsilon(1e-12));
  }
  std::vector<std::string> distinct;
  for (int i = 0; i < 12; ++i) distinct.push_back("u" + std::to_string(i));
  CHECK(mtld(distinct) == doctest::Approx(12.0));
  CHECK(code_of([] { mtld(std::vector<std::string>(9, "x")); }) == ErrorCode::kTooShort);
  CHECK_FALSE(lexical_report("just a few words").mtld.has_value());
}

TEST_CASE("corpus comparison and table") {
  const std::vector<std::string> real = {"The cat sat on the mat. It was warm and quiet there today.",
                                         "Markets rallied as investors cheered the strong earnings report."};
  const std::vector<std::string> synth = {"Goal goal goal goal goal goal goal goal goal goal goal goal."};
  const auto c = compare_corpora(real, synth);
  CHECK(c.ttr.real_n == 2);
  CHECK(c.ttr.synthetic_n == 1);
  CHECK(c.ttr.delta == doctest::Approx(std::abs(c.ttr.real - c.ttr.synthetic)));
  CHECK(c.ttr.synthetic == doctest::Approx(1.0 / 12));
  const auto table = render_table(c);
  for (const char* row : {"TTR-1000", "FK-Grade", "Hapax", "MTLD"}) CHECK(table.find(row) != std::string::npos);
  CHECK(to_json(c).at("MTLD").at("real_n") == c.mtld.real_n);
  CHECK(code_of([&] { compare_corpora({}, synth); }) == ErrorCode::kPreconditionViolated);
}

TEST_CASE("judge prompt lists shuffled domains and scored predictions") {
  const std::vector<ScoredLabel> preds = {{"Financial Services", 0.876}, {"Sports", 0.5}};
  const auto p = render_judge_prompt("Doc body.", preds, kDomains, 4);
  CHECK(p.domain_order.size() == 3);
  CHECK(std::set<std::string>(p.domain_order.begin(), p.domain_order.end()) ==
        std::set<std::string>{"Finance_Insurance", "Healthcare_Life_Sciences", "Sports"});
  CHECK(p.text.find("Finance_Insurance : 0.88") != std::string::npos);
  CHECK(p.text.find("Sports : 0.50") != std::string::npos);
  CHECK(p.text.find("Doc body.") != std::string::npos);
  CHECK(render_judge_prompt("Doc body.", preds, kDomains, 4).text == p.text);
  std::set<std::vector<std::string>> orders;
  for (std::uint64_t s = 0; s < 40; ++s) orders.insert(render_judge_prompt("d", preds, kDomains, s).domain_order);
  CHECK(orders.size() > 1);
  CHECK(code_of([&] { render_judge_prompt("d", {}, kDomains, 1); }) == ErrorCode::kPreconditionViolated);
}

TEST_CASE("judgement parsing") {
  const auto v = parse_judgement(
      "<COMMENTS> Looks right. <\\COMMENTS>\n<Judgement>\n{'Finance_Insurance': 'Agree', 'Sports' : 'disagree'}\n"
      "</Judgement>");
  CHECK(v.comments == "Looks right.");
  CHECK(v.ratings.at("Financial Services") == Rating::kAgree);
  CHECK(v.ratings.at("Sports") == Rating::kDisagree);
  const auto canon = parse_judgement("<Judgement>{\"Healthcare & Life Sciences\": \"agree\"}<\\Judgement>");
  CHECK(canon.ratings.at("Healthcare & Life Sciences") == Rating::kAgree);

  const std::vector<std::string> expected = {"Sports"};
  const auto kept = parse_judgement("<Judgement>{'Sports': 'agree', 'Law': 'agree'}<\\Judgement>", &expected);
  CHECK(kept.ratings.size() == 1);
  const std::vector<std::string> missing = {"Law", "Sports"};
  CHECK(code_of([&] { parse_judgement("<Judgement>{'Sports': 'agree'}<\\Judgement>", &missing); }) ==
        ErrorCode::kMalformedJudgement);
  for (const char* bad : {"no tags at all", "<Judgement>{'Sports': 'maybe'}<\\Judgement>",
                          "<Judgement>{'Sports': 'agree', 'Sports': 'agree'}<\\Judgement>",
                          "<Judgement>{'Sports: agree}<\\Judgement>", "<Judgement>{'Sports': 'agree'}"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_judgement(bad); }) == ErrorCode::kMalformedJudgement);
  }
}

TEST_CASE("agreement statistics") {
  JudgeVerdict a, b;
  a.ratings = {{"Sports", Rating::kAgree}, {"Law", Rating::kDisagree}};
  b.ratings = {{"Sports", Rating::kAgree}};
  const auto s = agreement_stats({a, b});
  CHECK(s.total == 3);
  CHECK(s.agree == 2);
  CHECK(s.overall_percent == doctest::Approx(200.0 / 3));
  CHECK(s.per_domain.at("Sports").percent == doctest::Approx(100.0));
  CHECK(s.per_domain.at("Law").percent == doctest::Approx(0.0));
  CHECK(code_of([] { agreement_stats({}); }) == ErrorCode::kPreconditionViolated);
  const auto j = to_json(a);
  CHECK(verdict_from_json(j).ratings == a.ratings);
}

TEST_CASE("judging with the stub and with retries") {
  const std::vector<ScoredLabel> preds = {{"Financial Services", 0.9}, {"Sports", 0.7}};
  StubJudge stub({"Sports"});
  const auto v = judge_document("d1", "text", preds, kDomains, stub, 3);
  CHECK(v.doc_id == "d1");
  CHECK(v.ratings.at("Financial Services") == Rating::kAgree);
  CHECK(v.ratings.at("Sports") == Rating::kDisagree);
  CHECK(v.shuffled_domain_order.size() == 3);

  ReplyJudge flaky({"garbage", "<Judgement>{'Finance_Insurance': 'agree', 'Sports': 'agree'}<\\Judgement>"});
  CHECK(judge_document("d2", "text", preds, kDomains, flaky, 3, 1).ratings.size() == 2);
  CHECK(flaky.calls == 2);
  ReplyJudge hopeless({"garbage"});
  CHECK(code_of([&] { judge_document("d3", "text", preds, kDomains, hopeless, 3, 2); }) ==
        ErrorCode::kMalformedJudgement);
  CHECK(hopeless.calls == 3);
}
