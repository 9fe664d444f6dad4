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


#include "seedmine/pipeline/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>

#include "seedmine/seedgen/generator.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"
#include "seedmine/util/rng.hpp"

namespace seedmine::pipeline {
namespace {

using nlohmann::json;
using Vocab = std::vector<std::string>;

const std::vector<std::string> kDomains = {"Financial Services", "Healthcare & Life Sciences", "Sports"};

const Vocab kFinance = {"ledger",  "equity",   "dividend", "premium",  "actuary", "annuity", "broker",
                        "hedging", "liquidity", "mortgage", "solvency", "treasury", "escrow", "coupon",
                        "margin",  "bonds",    "insurer",  "payout",   "deposit", "credit",  "lender",
                        "auditor", "capital",  "futures",  "leverage"};
const Vocab kHealth = {"clinic",  "patient", "vaccine",  "therapy",  "surgeon", "dosage",  "genome",
                       "protein", "oncology", "biopsy",  "nurse",    "pharmacy", "cardiac", "insulin",
                       "antibody", "diagnosis", "pathogen", "implant", "placebo", "enzyme",  "neuron",
                       "allergy", "tumor",   "hospice",  "radiology"};
const Vocab kSports = {"stadium", "athlete", "referee", "striker", "goalie",  "marathon", "sprint",
                       "league",  "playoff", "coach",   "trophy",  "dribble", "tackle",   "racquet",
                       "jersey",  "umpire",  "batting", "pitcher", "relay",   "podium",   "medal",
                       "rally",   "kickoff", "penalty", "halftime"};
const Vocab kGeneral = {"house",   "river",   "window",  "garden",  "morning", "people",  "table",   "yellow",
                        "simple",  "little",  "village", "candle",  "forest",  "letter",  "winter",  "summer",
                        "kitchen", "bridge",  "mountain", "street", "orange",  "silver",  "pocket",  "quiet",
                        "basket",  "ladder",  "meadow",  "cottage", "blanket", "pencil",  "mirror",  "harbor",
                        "lantern", "pebble",  "thunder", "valley",  "curtain", "apple",   "carpet",  "button",
                        "lagoon",  "shadow",  "ribbon",  "saddle",  "wander",  "gentle",  "hollow",  "parcel",
                        "timber",  "copper",  "feather", "puzzle",  "whistle", "cellar",  "orchard", "fountain",
                        "pillow",  "tunnel",  "cradle",  "marble"};

const char* kBoilerplate =
    "Subscribe to our newsletter for weekly updates and offers from the whole team every single morning.";

std::string short_id(const std::string& domain) {
  if (domain == "Financial Services") return "fin";
  if (domain == "Healthcare & Life Sciences") return "hls";
  return "spt";
}

}  // namespace

Fixture make_fixture(const FixtureOptions& options) {
  Fixture f;
  f.options = options;
  f.domains = kDomains;
  f.vocabularies = {{kDomains[0], kFinance}, {kDomains[1], kHealth}, {kDomains[2], kSports}};
  f.general_vocabulary = kGeneral;

  Rng rng(hash_combine(options.seed, 0x6669787475726531ULL));
  std::vector<FixtureDoc> docs;
  auto add = [&](std::string tag, std::string text, std::vector<std::string> truth, std::string kind) {
    FixtureDoc d;
    d.doc = corpus::Document::make(std::move(tag), std::move(text), "fixture");
    d.truth = std::move(truth);
    std::sort(d.truth.begin(), d.truth.end());
    d.kind = std::move(kind);
    docs.push_back(std::move(d));
  };

  for (const auto& domain : f.domains) {
    const std::vector<const Vocab*> v{&f.vocabularies.at(domain)};
    for (std::size_t i = 0; i < options.pure_per_domain; ++i) {
      add(short_id(domain), seedgen::vocabulary_text(rng, v, options.words_per_doc), {domain}, "pure");
    }
  }
  for (std::size_t a = 0; a < f.domains.size(); ++a) {
    for (std::size_t b = a + 1; b < f.domains.size(); ++b) {
      const std::vector<const Vocab*> v{&f.vocabularies.at(f.domains[a]), &f.vocabularies.at(f.domains[b])};
      for (std::size_t i = 0; i < options.mixed_per_pair; ++i) {
        add(short_id(f.domains[a]) + short_id(f.domains[b]),
            seedgen::vocabulary_text(rng, v, options.words_per_doc), {f.domains[a], f.domains[b]}, "mixed");
      }
    }
  }
  const std::vector<const Vocab*> general{&f.general_vocabulary};
  for (std::size_t i = 0; i < options.general_docs; ++i) {
    std::string text = seedgen::vocabulary_text(rng, general, options.words_per_doc);
    if (options.noise && i % 10 == 0) text += std::string("\n\n") + kBoilerplate;
    add("gen", std::move(text), {}, "general");
  }

  if (options.noise) {
    const std::size_t originals = docs.size();
    for (std::size_t i = 0; i < 20 && originals > 0; ++i) {
      const auto& src = docs[static_cast<std::size_t>(rng.uniform_index(originals))];
      // Same normalized text: extra spaces and different case.
      std::string copy = "  ";
      for (char c : src.doc.text) {
        if (c == ' ') {
          copy += "  ";
        } else {
          copy += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
      }
      add("dup", std::move(copy), src.truth, "duplicate");
    }
    for (std::size_t i = 0; i < 10; ++i) {
      add("short", seedgen::vocabulary_text(rng, general, 5 + i), {}, "short");
    }
    for (std::size_t i = 0; i < 5; ++i) {
      std::string text;
      for (std::size_t w = 0; w < 40; ++w) text += w % 2 == 0 ? "### " : "note ";
      add("sym", std::move(text), {}, "symbols");
    }
    f.malformed_lines = {"{\"id\": \"broken-1\", \"text\": ", "{\"id\": \"broken-2\"}", "not json at all"};
  }

  // Interleave kinds, then number.
  rng.shuffle(std::span<FixtureDoc>(docs));
  for (std::size_t i = 0; i < docs.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%05zu", i);
    docs[i].doc.id = docs[i].doc.id + "-" + buf;
  }
  f.docs = std::move(docs);
  return f;
}

nlohmann::json Fixture::config() const {
  json vocab = json::object();
  for (const auto& [domain, words] : vocabularies) vocab[domain] = words;
  return json{
      {"seed", options.seed},
      {"paths", {{"corpus", "corpus.jsonl"}, {"work", "work"}, {"reports", "reports"}}},
      {"ingest", {{"subdoc_threshold", 2}, {"max_chunk_words", 2500}}},
      {"embed", {{"backend", "stub"}, {"dim", options.embed_dim}}},
      {"index", {{"m", 45}, {"ef_construction", 256}, {"ef_search", 50}}},
      {"seedgen",
       {{"backend", "stub"},
        {"domains", domains},
        {"count", options.seeds_per_domain},
        {"multi_domain_prob", options.multi_domain_prob},
        {"stub", {{"kind", "vocabulary"}, {"document_words", options.seed_words}, {"vocabularies", vocab}}}}},
      {"mine", {{"k", 200}, {"t_sim", 0.85}, {"evidence_cap", 10}}},
      {"train", {{"min_per_label", 10}, {"negative_ratio", 1.0}, {"hyper", {{"epochs", 20}, {"buckets", 1 << 18}}}}},
      {"classify", {{"threshold", 0.5}}},
      {"metrics", {{"max_real_docs", 500}}},
      {"judge", {{"backend", "stub"}, {"sample_size", 200}}},
      {"mix", {{"domain", domains[1]}, {"domain_fraction", 0.25}}},
  };
}

std::map<std::string, std::vector<std::string>> Fixture::truth() const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& d : docs) {
    if (!d.truth.empty()) out[d.doc.id] = d.truth;
  }
  return out;
}

void write_fixture(const Fixture& fixture, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    io::AtomicFile out(dir / "corpus.jsonl");
    for (std::size_t i = 0; i < fixture.docs.size(); ++i) {
      const auto& d = fixture.docs[i].doc;
      out.stream() << json{{"id", d.id}, {"text", d.text}, {"source", d.source}}.dump() << '\n';
      // Malformed lines sit between good ones.
      if (!fixture.malformed_lines.empty() && i % 500 == 250) {
        out.stream() << fixture.malformed_lines[(i / 500) % fixture.malformed_lines.size()] << '\n';
      }
    }
    out.commit();
  }
  {
    io::AtomicFile out(dir / "truth.jsonl");
    for (const auto& [id, labels] : fixture.truth()) out.stream() << json{{"id", id}, {"labels", labels}}.dump() << '\n';
    out.commit();
  }
  io::write_file_atomic(dir / "seedmine.json", fixture.config().dump(2) + "\n");
}

std::map<std::string, std::vector<std::string>> read_truth(const std::filesystem::path& path) {
  std::map<std::string, std::vector<std::string>> out;
  io::for_each_line(path, [&](std::size_t line, std::string_view text) {
    if (text.empty()) return;
    const json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("id") || !j.contains("labels")) {
      throw Error(ErrorCode::kMalformedRecord, path.string() + ":" + std::to_string(line) + ": bad truth record");
    }
    out[j.at("id").get<std::string>()] = j.at("labels").get<std::vector<std::string>>();
  });
  return out;
}

LabelAccuracy score_against_truth(const std::vector<miner::LabeledRecord>& records,
                                  const std::map<std::string, std::vector<std::string>>& truth) {
  std::set<std::pair<std::string, std::string>> predicted;
  for (const auto& [doc, labels] : miner::rollup_documents(records)) {
    for (const auto& l : labels) predicted.emplace(doc, l);
  }
  LabelAccuracy a;
  a.predicted_pairs = predicted.size();
  for (const auto& [doc, labels] : truth) {
    a.truth_pairs += labels.size();
    for (const auto& l : labels) a.correct_pairs += predicted.count({doc, l});
  }
  a.precision = a.predicted_pairs == 0 ? 1.0 : static_cast<double>(a.correct_pairs) / a.predicted_pairs;
  a.recall = a.truth_pairs == 0 ? 1.0 : static_cast<double>(a.correct_pairs) / a.truth_pairs;
  return a;
}

}  // namespace seedmine::pipeline
