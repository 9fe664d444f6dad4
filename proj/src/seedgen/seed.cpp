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


#include "seedmine/seedgen/seed.hpp"

#include <algorithm>

#include "seedmine/util/error.hpp"
#include "seedmine/util/rng.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::seedgen {
namespace {

template <typename Set>
std::string pick(Rng& rng, const Set& set) {
  return std::string(set[static_cast<std::size_t>(rng.uniform_index(set.size()))]);
}

std::string lower(std::string_view s) { return text::lowercase(s); }

std::string render_single(const SeedSpec& s) {
  const std::string dt = lower(s.doc_type);
  const std::string ind(prompt_name(s.industries[0]));
  const std::string dem = lower(s.demeanor);
  std::string p;
  p += "Write a " + dt + " about " + ind + " using the following steps.\n";
  p += "1. Generate a random topic from " + ind + " domain.\n";
  p += "2. Write a short premise for the " + dt + " about the topic from " + ind + "\n";
  p += "3. Write a short description of the author of the " + dt + ". The author should be a practicing member of the " +
       ind + " industry.\n";
  p += "4. Describe the " + dt + "'s audience.\n";
  p += "5. Give the author's motive in writing the document for the audience. The author's demeanor is " + dem + ".\n";
  p += "6. Write a " + dt + " about " + ind +
       " based on the topic generated, premise from the perspective and motive of the author targeting to the "
       "audience.\n";
  p += "The resulting document should be " + std::string(length_phrase(s.length)) + ".\n";
  p += "Your response should be in the following format.\n";
  p += "    - TOPIC:\n    - PREMISE:\n    - AUTHOR:\n    - AUDIENCE:\n    - MOTIVE:\n    - DOCUMENT:\n";
  return p;
}

std::string render_pair(const SeedSpec& s) {
  const std::string dt = lower(s.doc_type);
  const std::string pair = std::string(prompt_name(s.industries[0])) + " and " + std::string(prompt_name(s.industries[1]));
  const std::string dem = lower(s.demeanor);
  std::string p;
  p += "Write a " + dt + " about 2 industries: " + pair + "\n";
  p += "using the following steps.\n";
  p += "1. Generate a random topic from " + pair + " domains\n";
  p += "2. Write a short premise(less than 30 words) for the " + dt + " about the topic\n";
  p += "from " + pair + " domains.\n";
  p += "3. Write a short description(less than 30 words) of the author of the " + dt + ".\n";
  p += "4. Describe the " + dt + "’s audience.\n";
  p += "5. Give the author's motive(less than 30 words) in writing the document for the audience.\n";
  p += "The author's demeanor is " + dem + ".\n";
  p += "6. Write a " + dt + " about " + pair + " industries\n";
  p += "based on the topic generated, premise from the perspective and motive of the author.\n";
  p += "The resulting document should be " + std::string(length_phrase(s.length)) + ". Your response should\n";
  p += "be in the following format.\n";
  p += "    - TOPIC:\n    - PREMISE:\n    - AUTHOR:\n    - AUDIENCE\n    - MOTIVE:\n    - DOCUMENT:\n";
  return p;
}

// Recognizes "  - **Topic** :" style header lines. Returns the field index
// and the offset just past the colon.
std::optional<std::pair<std::size_t, std::size_t>> match_header(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (text::is_space(c) || c == '-' || c == '*' || c == '#') {
      ++i;
    } else if (line.substr(i, 3) == "•") {
      i += 3;
    } else {
      break;
    }
  }
  for (std::size_t f = 0; f < kFieldNames.size(); ++f) {
    const auto name = kFieldNames[f];
    if (line.size() - i < name.size() || !text::iequals(line.substr(i, name.size()), name)) continue;
    std::size_t j = i + name.size();
    while (j < line.size() && line[j] == '*') ++j;
    while (j < line.size() && text::is_space(line[j])) ++j;
    if (j < line.size() && line[j] == ':') return std::make_pair(f, j + 1);
  }
  return std::nullopt;
}

}  // namespace

void SeedSpec::validate() const {
  if (!is_doc_type(doc_type)) throw Error(ErrorCode::kInvalidParams, "unknown doc type: " + doc_type);
  if (!is_demeanor(demeanor)) throw Error(ErrorCode::kInvalidParams, "unknown demeanor: " + demeanor);
  if (industries.empty() || industries.size() > 2) {
    throw Error(ErrorCode::kInvalidParams, "a spec names one or two industries");
  }
  for (const auto& i : industries) require_industry(i);
  if (industries.size() == 2 && industries[0] == industries[1]) {
    throw Error(ErrorCode::kInvalidParams, "industries must be distinct");
  }
}

SeedSpec sample_spec(std::uint64_t rng_seed, const std::vector<std::string>& domains, double multi_domain_prob,
                     const std::optional<std::string>& primary) {
  if (domains.empty()) throw Error(ErrorCode::kInvalidParams, "no domains to sample from");
  if (!(multi_domain_prob >= 0.0 && multi_domain_prob <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "multi_domain_prob must lie in [0, 1]");
  }
  for (const auto& d : domains) require_industry(d);
  if (primary) require_industry(*primary);

  Rng rng(rng_seed);
  SeedSpec spec;
  spec.rng_seed = rng_seed;
  spec.doc_type = pick(rng, kDocTypes);
  spec.industries.push_back(primary ? *primary : pick(rng, domains));
  if (rng.bernoulli(multi_domain_prob)) {
    std::vector<std::string> others;
    for (const auto& d : domains) {
      if (d != spec.industries[0] && std::find(others.begin(), others.end(), d) == others.end()) others.push_back(d);
    }
    if (!others.empty()) spec.industries.push_back(pick(rng, others));
  }
  spec.length = kLengths[static_cast<std::size_t>(rng.uniform_index(kLengths.size()))];
  spec.demeanor = pick(rng, kDemeanors);
  return spec;
}

std::string render_prompt(const SeedSpec& spec) {
  spec.validate();
  std::string p = spec.industries.size() == 1 ? render_single(spec) : render_pair(spec);
  p += "\nResponse:";
  return p;
}

GenerationFields parse_generation(std::string_view raw) {
  std::array<std::optional<std::string>, 6> found;
  std::optional<std::size_t> current;
  auto all_but = [&](std::size_t skip) {
    for (std::size_t f = 0; f < found.size(); ++f) {
      if (f != skip && !found[f]) return false;
    }
    return true;
  };

  for (auto line : text::split_lines(raw)) {
    const auto header = match_header(line);
    const bool in_document = current == std::size_t{5};
    if (header && !found[header->first] && !(in_document && all_but(5))) {
      current = header->first;
      found[*current] = std::string(line.substr(header->second));
      continue;
    }
    if (current) {
      *found[*current] += '\n';
      *found[*current] += line;
    }
  }

  GenerationFields out;
  std::array<std::string*, 6> slots = {&out.topic, &out.premise, &out.author, &out.audience, &out.motive, &out.document};
  for (std::size_t f = 0; f < found.size(); ++f) {
    if (!found[f]) throw Error(ErrorCode::kMissingField, std::string(kFieldNames[f]));
    *slots[f] = std::string(text::trim(*found[f]));
    if (slots[f]->empty()) throw Error(ErrorCode::kMissingField, std::string(kFieldNames[f]) + " is empty");
  }
  return out;
}

nlohmann::json to_json(const SeedSpec& spec) {
  return nlohmann::json{{"doc_type", spec.doc_type},
                        {"industries", spec.industries},
                        {"length", std::string(to_string(spec.length))},
                        {"demeanor", spec.demeanor},
                        {"rng_seed", spec.rng_seed}};
}

SeedSpec spec_from_json(const nlohmann::json& j) {
  try {
    SeedSpec s;
    s.doc_type = j.at("doc_type").get<std::string>();
    s.industries = j.at("industries").get<std::vector<std::string>>();
    const auto len = parse_length(j.at("length").get<std::string>());
    if (!len) throw Error(ErrorCode::kMalformedRecord, "bad length in spec");
    s.length = *len;
    s.demeanor = j.at("demeanor").get<std::string>();
    s.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("bad seed spec: ") + e.what());
  }
}

nlohmann::json to_json(const SeedDocument& seed) {
  return nlohmann::json{{"seed_id", seed.seed_id},
                        {"domain", seed.domain},
                        {"spec", to_json(seed.spec)},
                        {"topic", seed.fields.topic},
                        {"premise", seed.fields.premise},
                        {"author", seed.fields.author},
                        {"audience", seed.fields.audience},
                        {"motive", seed.fields.motive},
                        {"document", seed.fields.document},
                        {"raw", seed.raw}};
}

SeedDocument seed_from_json(const nlohmann::json& j) {
  try {
    SeedDocument s;
    s.seed_id = j.at("seed_id").get<std::string>();
    s.domain = j.at("domain").get<std::string>();
    s.spec = spec_from_json(j.at("spec"));
    s.fields.topic = j.at("topic").get<std::string>();
    s.fields.premise = j.at("premise").get<std::string>();
    s.fields.author = j.at("author").get<std::string>();
    s.fields.audience = j.at("audience").get<std::string>();
    s.fields.motive = j.at("motive").get<std::string>();
    s.fields.document = j.at("document").get<std::string>();
    s.raw = j.at("raw").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("bad seed record: ") + e.what());
  }
}

}  // namespace seedmine::seedgen
