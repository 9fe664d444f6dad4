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

#include <cmath>
#include <set>
#include <sstream>

#include "seedmine/mixer/mixer.hpp"
#include "seedmine/util/error.hpp"

using namespace seedmine;
using namespace seedmine::mixer;

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

std::vector<PoolDoc> pool(const std::string& prefix, std::size_t n, std::size_t tokens) {
  std::vector<PoolDoc> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({prefix + std::to_string(i), tokens + i % 7});
  return out;
}

std::size_t sum(const std::vector<Selection>& s) {
  std::size_t t = 0;
  for (const auto& x : s) t += x.tokens;
  return t;
}

DocStore store_for(const std::vector<PoolDoc>& p) {
  DocStore s;
  for (const auto& d : p) s.emplace(d.id, corpus::Document::make(d.id, "text of " + d.id));
  return s;
}

}  // namespace

TEST_CASE("token counting uses whitespace tokens") {
  const auto c = count_tokens({corpus::Document::make("a", "one two three"), corpus::Document::make("b", " x ")});
  CHECK(c.total == 4);
  CHECK(c.docs[0].tokens == 3);
  std::istringstream in(R"({"id":"a","text":"a b"})" "\n" R"({"id":"b","text":"c"})" "\n");
  CHECK(count_tokens(in).total == 3);
  std::istringstream bad("{nope\n");
  CHECK(code_of([&] { count_tokens(bad); }) == ErrorCode::kMalformedRecord);
}

TEST_CASE("each side meets its budget with minimal overshoot") {
  const auto dom = pool("d", 400, 100), gen = pool("g", 1200, 100);
  for (double f : {0.1, 0.25, 0.5}) {
    MixOptions o;
    o.domain_fraction = f;
    o.target_total_tokens = 40000;
    o.tolerance = 0.01;
    const auto plan = plan_mix(dom, gen, o);
    const auto dom_budget = static_cast<std::size_t>(std::llround(f * 40000));
    CHECK(plan.domain_tokens == sum(plan.domain));
    CHECK(plan.general_tokens == sum(plan.general));
    CHECK(plan.domain_tokens >= dom_budget);
    CHECK(plan.domain_tokens - plan.domain.back().tokens < dom_budget);
    CHECK(plan.general_tokens >= 40000 - dom_budget);
    CHECK(plan.general_tokens - plan.general.back().tokens < 40000 - dom_budget);
    CHECK(plan.achieved_fraction ==
          doctest::Approx(double(plan.domain_tokens) / (plan.domain_tokens + plan.general_tokens)));
    CHECK(std::abs(plan.achieved_fraction - f) <= 0.01);
    std::set<std::string> ids;
    for (const auto& s : plan.domain) CHECK(ids.insert(s.id).second);
    for (const auto& s : plan.general) CHECK(ids.insert(s.id).second);
  }
}

TEST_CASE("plans depend only on the inputs and the seed") {
  const auto dom = pool("d", 100, 50), gen = pool("g", 300, 50);
  MixOptions o;
  o.target_total_tokens = 8000;
  o.tolerance = 0.02;
  const auto a = plan_mix(dom, gen, o);
  const auto b = plan_mix(dom, gen, o);
  CHECK(a.domain == b.domain);
  CHECK(a.general == b.general);
  o.seed = 43;
  CHECK(plan_mix(dom, gen, o).domain != a.domain);
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("exhausted pools") {
  const auto dom = pool("d", 5, 10), gen = pool("g", 100, 10);
  MixOptions o;
  o.target_total_tokens = 1000;
  o.tolerance = 0.02;
  CHECK(code_of([&] { plan_mix(dom, gen, o); }) == ErrorCode::kInsufficientDomainTokens);
  CHECK(code_of([&] { plan_mix(gen, dom, o); }) == ErrorCode::kInsufficientGeneralTokens);
  o.allow_repetition = true;
  const auto plan = plan_mix(dom, gen, o);
  std::size_t repeated = 0;
  for (const auto& s : plan.domain) repeated += s.repeated;
  CHECK(repeated > 0);
  CHECK(repeated == plan.domain.size() - 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK_FALSE(plan.domain[i].repeated);
  CHECK(code_of([&] { plan_mix({}, gen, o); }) == ErrorCode::kInsufficientDomainTokens);
}

TEST_CASE("tolerance and parameter errors") {
  const std::vector<PoolDoc> big = {{"huge", 1000}};
  const auto gen = pool("g", 100, 10);
  MixOptions o;
  o.target_total_tokens = 1000;
  o.domain_fraction = 0.25;
  CHECK(code_of([&] { plan_mix(big, gen, o); }) == ErrorCode::kToleranceExceeded);
  o.tolerance = 1.0;
  CHECK_NOTHROW(plan_mix(big, gen, o));
  o.domain_fraction = 1.5;
  CHECK(code_of([&] { plan_mix(big, gen, o); }) == ErrorCode::kInvalidParams);
  o.domain_fraction = 0.25;
  o.target_total_tokens = 0;
  CHECK(code_of([&] { plan_mix(big, gen, o); }) == ErrorCode::kInvalidParams);
}

TEST_CASE("writing a mix emits every selection and checks the stores first") {
  const auto dom = pool("d", 50, 20), gen = pool("g", 150, 20);
  MixOptions o;
  o.target_total_tokens = 2000;
  o.tolerance = 0.02;
  const auto plan = plan_mix(dom, gen, o);
  std::ostringstream out;
  const auto n = write_mix(plan, store_for(dom), store_for(gen), out);
  CHECK(n == plan.domain.size() + plan.general.size());
  std::istringstream lines(out.str());
  std::string line;
  std::size_t domain_lines = 0, total = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    domain_lines += j.at("mix_source") == "domain";
    ++total;
  }
  CHECK(total == n);
  CHECK(domain_lines == plan.domain.size());
  std::ostringstream again;
  write_mix(plan, store_for(dom), store_for(gen), again);
  CHECK(again.str() == out.str());

  auto partial = store_for(gen);
  partial.erase(plan.general.back().id);
  std::ostringstream none;
  try {
    write_mix(plan, store_for(dom), partial, none);
    FAIL("expected MissingDocument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingDocument);
    CHECK(std::string(e.what()).find(plan.general.back().id) != std::string::npos);
  }
  CHECK(none.str().empty());
  CHECK(to_string(MixSource::kGeneral) == "general");
}
