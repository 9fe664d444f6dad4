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


#include "seedmine/mixer/mixer.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "seedmine/corpus/records.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"
#include "seedmine/util/rng.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::mixer {
namespace {

constexpr std::uint64_t kDomainStream = 1;
constexpr std::uint64_t kGeneralStream = 2;
constexpr std::uint64_t kEmitStream = 3;

std::vector<Selection> take(const std::vector<PoolDoc>& pool, std::size_t budget, std::uint64_t seed,
                            bool allow_repetition, ErrorCode shortage, std::size_t& taken) {
  std::vector<Selection> out;
  taken = 0;
  if (budget == 0) return out;
  std::size_t pool_tokens = 0;
  for (const auto& d : pool) pool_tokens += d.tokens;
  if (pool_tokens < budget && (!allow_repetition || pool_tokens == 0)) {
    throw Error(shortage, "pool has " + std::to_string(pool_tokens) + " tokens, budget is " + std::to_string(budget));
  }
  Rng rng(seed);
  std::vector<std::size_t> order(pool.size());
  for (std::size_t pass = 0; taken < budget; ++pass) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      if (taken >= budget) break;
      out.push_back({pool[i].id, pool[i].tokens, pass > 0});
      taken += pool[i].tokens;
    }
  }
  return out;
}

void check_ids(const std::vector<Selection>& picks, const DocStore& store) {
  for (const auto& s : picks) {
    if (!store.contains(s.id)) throw Error(ErrorCode::kMissingDocument, s.id);
  }
}

}  // namespace

TokenCounts count_tokens(const std::vector<corpus::Document>& docs) {
  TokenCounts c;
  for (const auto& d : docs) {
    const std::size_t n = text::count_whitespace_tokens(d.text);
    c.docs.push_back({d.id, n});
    c.total += n;
  }
  return c;
}

TokenCounts count_tokens(std::istream& records) {
  TokenCounts c;
  io::for_each_line(records, [&](std::size_t line, std::string_view s) {
    if (text::trim(s).empty()) return;
    try {
      const auto j = nlohmann::json::parse(s);
      const auto text = j.at("text").get<std::string>();
      const std::size_t n = text::count_whitespace_tokens(text);
      c.docs.push_back({j.at("id").get<std::string>(), n});
      c.total += n;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord, "line " + std::to_string(line) + ": " + e.what());
    }
  });
  return c;
}

MixPlan plan_mix(const std::vector<PoolDoc>& domain_pool, const std::vector<PoolDoc>& general_pool,
                 const MixOptions& options) {
  if (options.target_total_tokens == 0) throw Error(ErrorCode::kInvalidParams, "target_total_tokens must be >= 1");
  if (!(options.domain_fraction >= 0.0 && options.domain_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "domain_fraction must lie in [0, 1]");
  }
  MixPlan plan;
  plan.options = options;
  const auto domain_budget = static_cast<std::size_t>(
      std::llround(options.domain_fraction * static_cast<double>(options.target_total_tokens)));
  const std::size_t general_budget = options.target_total_tokens - domain_budget;

  plan.domain = take(domain_pool, domain_budget, hash_combine(options.seed, kDomainStream), options.allow_repetition,
                     ErrorCode::kInsufficientDomainTokens, plan.domain_tokens);
  plan.general = take(general_pool, general_budget, hash_combine(options.seed, kGeneralStream),
                      options.allow_repetition, ErrorCode::kInsufficientGeneralTokens, plan.general_tokens);
  const std::size_t total = plan.domain_tokens + plan.general_tokens;
  plan.achieved_fraction = total == 0 ? 0.0 : static_cast<double>(plan.domain_tokens) / static_cast<double>(total);
  if (std::abs(plan.achieved_fraction - options.domain_fraction) > options.tolerance) {
    throw Error(ErrorCode::kToleranceExceeded, "achieved domain share " + std::to_string(plan.achieved_fraction) +
                                                   " vs target " + std::to_string(options.domain_fraction));
  }
  return plan;
}

std::string_view to_string(MixSource s) noexcept { return s == MixSource::kDomain ? "domain" : "general"; }

void emit_mix(const MixPlan& plan, const DocStore& domain_store, const DocStore& general_store,
              const std::function<void(const corpus::Document&, MixSource)>& sink) {
  check_ids(plan.domain, domain_store);
  check_ids(plan.general, general_store);
  std::vector<std::pair<const Selection*, MixSource>> items;
  items.reserve(plan.domain.size() + plan.general.size());
  for (const auto& s : plan.domain) items.emplace_back(&s, MixSource::kDomain);
  for (const auto& s : plan.general) items.emplace_back(&s, MixSource::kGeneral);
  Rng rng(hash_combine(plan.options.seed, kEmitStream));
  rng.shuffle(std::span<std::pair<const Selection*, MixSource>>(items));
  for (const auto& [sel, src] : items) {
    const auto& store = src == MixSource::kDomain ? domain_store : general_store;
    sink(store.at(sel->id), src);
  }
}

std::size_t write_mix(const MixPlan& plan, const DocStore& domain_store, const DocStore& general_store,
                      std::ostream& out) {
  std::size_t n = 0;
  emit_mix(plan, domain_store, general_store, [&](const corpus::Document& d, MixSource src) {
    auto j = corpus::to_json(d);
    j["mix_source"] = std::string(to_string(src));
    out << j.dump() << '\n';
    ++n;
  });
  if (!out) throw Error(ErrorCode::kIoFailure, "write failure while emitting mix");
  return n;
}

nlohmann::json to_json(const MixPlan& plan) {
  auto side = [](const std::vector<Selection>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& s : v) a.push_back({{"id", s.id}, {"tokens", s.tokens}, {"repeated", s.repeated}});
    return a;
  };
  return nlohmann::json{{"target_total_tokens", plan.options.target_total_tokens},
                        {"domain_fraction", plan.options.domain_fraction},
                        {"tolerance", plan.options.tolerance},
                        {"seed", plan.options.seed},
                        {"allow_repetition", plan.options.allow_repetition},
                        {"token_counting", "whitespace"},
                        {"domain_tokens", plan.domain_tokens},
                        {"general_tokens", plan.general_tokens},
                        {"achieved_fraction", plan.achieved_fraction},
                        {"domain", side(plan.domain)},
                        {"general", side(plan.general)}};
}

}  // namespace seedmine::mixer
