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


// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if
// any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include <spdlog/spdlog.h>

#include "oracles.hpp"
#include "seedmine/classifier/model.hpp"
#include "seedmine/corpus/dedup.hpp"
#include "seedmine/corpus/records.hpp"
#include "seedmine/evalkit/judge.hpp"
#include "seedmine/evalkit/lexical.hpp"
#include "seedmine/index/hnsw.hpp"
#include "seedmine/miner/miner.hpp"
#include "seedmine/mixer/mixer.hpp"
#include "seedmine/pipeline/config.hpp"
#include "seedmine/pipeline/fixture.hpp"
#include "seedmine/pipeline/runner.hpp"
#include "seedmine/seedgen/dimensions.hpp"
#include "seedmine/seedgen/generator.hpp"
#include "seedmine/seedgen/seed.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"
#include "seedmine/util/rng.hpp"
#include "seedmine/util/text.hpp"

#ifndef SEEDMINE_TEST_DATA
#define SEEDMINE_TEST_DATA "tests/data"
#endif

namespace {

namespace fs = std::filesystem;
using namespace seedmine;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("seedmine-acceptance-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------

Outcome ann_fidelity() {
  constexpr std::size_t kN = 10000, kDim = 64, kQueries = 100, kK = 10;
  const auto data = testing::random_unit_vectors(kN, kDim, 1001);
  const auto queries = testing::random_unit_vectors(kQueries, kDim, 2002);

  const auto t0 = Clock::now();
  index::HnswIndex idx({45, 256, 50, kDim, 42});
  for (std::size_t i = 0; i < kN; ++i) idx.insert("v" + std::to_string(i), data[i]);
  std::vector<std::vector<index::Neighbor>> approx;
  for (const auto& q : queries) approx.push_back(idx.query(q, kK));
  const double elapsed = seconds_since(t0);

  std::vector<std::string> ids;
  for (std::size_t i = 0; i < kN; ++i) ids.push_back("v" + std::to_string(i));
  const auto corpus = testing::as_corpus(ids, data);
  double sum = 0.0;
  for (std::size_t q = 0; q < kQueries; ++q) {
    const std::vector<double> qd(queries[q].begin(), queries[q].end());
    sum += testing::recall(approx[q], testing::brute_force_knn(corpus, qd, kK));
  }
  const double mean = sum / kQueries;
  return {mean >= 0.95 && elapsed < 60.0, "recall@10=" + fmt("%.4f", mean) + " build+query=" + fmt("%.1fs", elapsed)};
}

std::string describe(const miner::LabeledRecord& r) {
  std::string s = r.doc_id + " [";
  for (const auto& l : r.labels) s += l + ";";
  s += "]";
  for (const auto& e : r.evidence) s += " " + e.seed_id + "@" + fmt("%.6f", e.similarity);
  return s;
}

// Same records, labels and evidence seeds; similarities agree to float
// precision.
bool same_records(const std::vector<miner::LabeledRecord>& a, const std::vector<miner::LabeledRecord>& b,
                  std::string* why) {
  if (a.size() != b.size()) {
    *why = "record count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    bool ok = a[i].doc_id == b[i].doc_id && a[i].labels == b[i].labels && a[i].evidence.size() == b[i].evidence.size();
    for (std::size_t e = 0; ok && e < a[i].evidence.size(); ++e) {
      ok = a[i].evidence[e].label == b[i].evidence[e].label && a[i].evidence[e].seed_id == b[i].evidence[e].seed_id &&
           std::abs(a[i].evidence[e].similarity - b[i].evidence[e].similarity) <= 1e-5;
    }
    if (!ok) {
      *why = "first difference: " + describe(a[i]) + " | " + describe(b[i]);
      return false;
    }
  }
  return true;
}

struct MiningSetup {
  testing::MiningFixture fixture;
  index::HnswIndex index;
};

// Built once, shared by the equivalence and monotonicity checks.
MiningSetup& mining_setup() {
  static MiningSetup setup = [] {
    auto f = testing::make_mining_fixture();
    index::HnswIndex idx({45, 256, 50, f.dim, 7});
    for (std::size_t i = 0; i < f.chunk_ids.size(); ++i) idx.insert(f.chunk_ids[i], f.chunk_vectors[i]);
    return MiningSetup{std::move(f), std::move(idx)};
  }();
  return setup;
}

std::vector<miner::LabeledRecord> mine_with_index(const MiningSetup& s, double t_sim) {
  miner::MiningParams p;
  p.k = 200;
  p.t_sim = t_sim;
  std::vector<miner::SeedHits> hits;
  for (std::size_t i = 0; i < s.fixture.seeds.size(); ++i) {
    hits.push_back({s.fixture.seeds[i].seed_id, s.fixture.seeds[i].spec.industries,
                    miner::mine_neighbors(s.fixture.seed_vectors[i], s.index, p)});
  }
  return miner::assign_labels(hits, p.evidence_cap);
}

Outcome mining_equivalence() {
  auto& s = mining_setup();
  const auto& f = s.fixture;
  const auto mined = mine_with_index(s, 0.85);
  const auto oracle = testing::brute_force_mine(testing::as_corpus(f.chunk_ids, f.chunk_vectors),
                                                testing::as_oracle_seeds(f), 200, 0.85, 10);
  std::string why;
  if (f.chunk_ids.size() != 1500) return {false, "fixture has " + std::to_string(f.chunk_ids.size()) + " chunks"};
  if (!same_records(mined, oracle, &why)) return {false, why};

  // Multi-label records are exactly the mixed chunks that seeds of two or
  // more domains retrieved.
  const std::set<std::string> mixed(f.mixed_chunk_ids.begin(), f.mixed_chunk_ids.end());
  std::set<std::string> multi, mixed_hit_by_two;
  for (const auto& r : mined) {
    if (r.labels.size() >= 2) multi.insert(r.doc_id);
  }
  for (const auto& r : oracle) {
    std::set<std::string> domains;
    for (const auto& e : r.evidence) domains.insert(e.label);
    if (mixed.count(r.doc_id) && domains.size() >= 2) mixed_hit_by_two.insert(r.doc_id);
  }
  const bool multi_ok = multi == mixed_hit_by_two;
  return {multi_ok, std::to_string(mined.size()) + " records identical to brute force; " +
                        std::to_string(multi.size()) + " multi-label, all on mixed chunks: " +
                        (multi_ok ? "yes" : "no")};
}

Outcome threshold_monotonicity() {
  auto& s = mining_setup();
  const std::vector<double> thresholds = {0.5, 0.7, 0.85, 0.95};
  std::vector<std::set<std::pair<std::string, std::string>>> pairs;
  for (double t : thresholds) {
    std::set<std::pair<std::string, std::string>> p;
    for (const auto& r : mine_with_index(s, t)) {
      for (const auto& l : r.labels) p.emplace(r.doc_id, l);
    }
    pairs.push_back(std::move(p));
  }
  std::string sizes;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    sizes += (i ? "/" : "") + std::to_string(pairs[i].size());
    if (i > 0 && !std::includes(pairs[i - 1].begin(), pairs[i - 1].end(), pairs[i].begin(), pairs[i].end())) {
      return {false, "pairs at t=" + fmt("%.2f", thresholds[i]) + " not contained in t=" + fmt("%.2f", thresholds[i - 1])};
    }
  }
  return {true, "(doc,label) pairs " + sizes + " at t=0.5/0.7/0.85/0.95, nested"};
}

// ---------------------------------------------------------------------------

std::vector<classifier::Example> separable_examples(const pipeline::Fixture& f, std::size_t per_label,
                                                    std::uint64_t seed, const std::string& prefix) {
  Rng rng(seed);
  std::vector<classifier::Example> out;
  for (const auto& d : f.domains) {
    const std::vector<const std::vector<std::string>*> v{&f.vocabularies.at(d)};
    for (std::size_t i = 0; i < per_label; ++i) {
      out.push_back({prefix + seedgen::slug(d) + "-" + std::to_string(i), seedgen::vocabulary_text(rng, v, 120), {d}});
    }
  }
  const std::vector<const std::vector<std::string>*> g{&f.general_vocabulary};
  for (std::size_t i = 0; i < per_label; ++i) {
    out.push_back({prefix + "none-" + std::to_string(i), seedgen::vocabulary_text(rng, g, 120), {}});
  }
  return out;
}

Outcome classifier_quality() {
  const auto f = pipeline::make_fixture({});
  const auto train = separable_examples(f, 500, 11, "tr-");
  const auto dev = separable_examples(f, 100, 12, "dv-");

  classifier::Hyperparams h;
  h.epochs = 20;
  h.buckets = 1 << 18;
  h.seed = 5;
  const auto model = classifier::train(train, dev, h);
  const double f1 = classifier::evaluate(model, dev).micro_f1;

  // Bit-identical retraining, compared through the saved bytes.
  const auto again = classifier::train(train, dev, h);
  const auto dir = scratch_dir("classifier");
  model.save(dir / "a.bin");
  again.save(dir / "b.bin");
  const bool identical = io::read_file(dir / "a.bin") == io::read_file(dir / "b.bin");

  // Central differences on a perturbed model over a small batch.
  auto probe = model;
  Rng rng(99);
  for (auto& row : probe.weights) {
    for (auto& w : row) w = w == 0.0 ? 0.0 : w + 0.1 * (rng.uniform01() - 0.5);
  }
  const std::vector<classifier::Example> batch(train.begin(), train.begin() + 40);
  double worst = 0.0;
  const double l2 = 1e-3;
  for (std::size_t label = 0; label < probe.labels.size(); ++label) {
    const auto grad = classifier::label_loss_gradient(probe, label, batch, l2);
    std::size_t checked = 0;
    for (const auto& [bucket, g] : grad.weights) {
      if (checked++ >= 25) break;
      const double eps = 1e-6;
      auto plus = probe, minus = probe;
      plus.weights[label][bucket] += eps;
      minus.weights[label][bucket] -= eps;
      const double numeric =
          (classifier::label_loss(plus, label, batch, l2) - classifier::label_loss(minus, label, batch, l2)) / (2 * eps);
      const double rel = std::abs(numeric - g) / std::max({1e-8, std::abs(numeric), std::abs(g)});
      worst = std::max(worst, rel);
    }
    auto plus = probe, minus = probe;
    plus.bias[label] += 1e-6;
    minus.bias[label] -= 1e-6;
    const double numeric =
        (classifier::label_loss(plus, label, batch, l2) - classifier::label_loss(minus, label, batch, l2)) / 2e-6;
    worst = std::max(worst, std::abs(numeric - grad.bias) / std::max({1e-8, std::abs(numeric), std::abs(grad.bias)}));
  }
  const bool ok = f1 >= 0.95 && worst <= 1e-4 && identical;
  return {ok, "dev micro-F1=" + fmt("%.4f", f1) + " worst gradient rel err=" + fmt("%.2e", worst) +
                  " retrain identical=" + (identical ? "yes" : "no")};
}

Outcome lexical_metrics() {
  const double hapax = evalkit::hapax_ratio("a a b");
  const double ttr = evalkit::lexical_diversity("a a a a");
  const double fk = evalkit::flesch_kincaid_grade("The cat sat on the mat.");
  const bool fixtures = hapax == 0.5 && ttr == 0.25 && std::abs(fk - (-1.45)) < 1e-9;

  Rng rng(2024);
  const std::vector<std::string> alphabet = {"a", "b", "c", "data", "model", "the", "of", "x", "tree", "alpha"};
  std::size_t bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto n = 10 + rng.uniform_index(400);
    const auto vocab = 1 + rng.uniform_index(alphabet.size());
    std::string text;
    for (std::size_t t = 0; t < n; ++t) {
      text += alphabet[rng.uniform_index(vocab)];
      text += rng.bernoulli(0.1) ? ". " : " ";
    }
    const auto r = evalkit::lexical_report(text);
    const bool in_range = r.lexical_diversity >= 0.0 && r.lexical_diversity <= 1.0 && r.hapax_ratio >= 0.0 &&
                          r.hapax_ratio <= 1.0 && r.mtld && std::isfinite(*r.mtld) &&
                          std::isfinite(r.flesch_kincaid_grade);
    bad += in_range ? 0 : 1;
  }
  return {fixtures && bad == 0, "hapax=" + fmt("%.2f", hapax) + " ttr=" + fmt("%.2f", ttr) + " fk=" + fmt("%.2f", fk) +
                                    "; fuzz violations=" + std::to_string(bad) + "/1000"};
}

// ---------------------------------------------------------------------------

std::string read_data(const std::string& name) { return io::read_file(fs::path(SEEDMINE_TEST_DATA) / name); }

std::string collapse(std::string_view s) {
  std::string out;
  for (auto w : text::split_whitespace(s)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

Outcome prompt_fidelity() {
  struct Case {
    const char* name;
    seedgen::SeedSpec spec;
  };
  const std::vector<Case> cases = {
      {"legal_brief", {"Legal brief", {"Financial Services"}, seedgen::Length::kVeryLong, "Professional", 0}},
      {"product_proposal",
       {"Product proposal", {"Healthcare & Life Sciences"}, seedgen::Length::kShort, "Professional", 0}},
      {"textbook_chapter",
       {"Textbook chapter", {"Sports", "Travel & Hospitality"}, seedgen::Length::kVeryLong, "Professional", 0}},
  };
  std::string detail;
  bool ok = true;
  for (const auto& c : cases) {
    const auto rendered = seedgen::render_prompt(c.spec);
    const bool same = collapse(rendered) == collapse(read_data(std::string(c.name) + "_prompt.txt")) + " Response:";
    if (!same) {
      ok = false;
      detail += std::string(c.name) + " prompt differs; ";
    }
  }
  std::size_t roundtrips = 0;
  for (const auto& c : cases) {
    try {
      const auto g = seedgen::parse_generation(read_data(std::string(c.name) + "_generation.txt"));
      const bool fields = !g.topic.empty() && !g.premise.empty() && !g.author.empty() && !g.audience.empty() &&
                          !g.motive.empty() && !g.document.empty();
      roundtrips += fields ? 1 : 0;
    } catch (const Error& e) {
      detail += std::string(c.name) + ": " + e.what() + "; ";
    }
  }
  ok = ok && roundtrips == cases.size();
  if (detail.empty()) detail = "3/3 prompts match after whitespace normalization; 3/3 generations parse into six fields";
  return {ok, detail};
}

Outcome mix_planning() {
  Rng rng(77);
  std::vector<mixer::PoolDoc> domain, general;
  for (int i = 0; i < 3000; ++i) domain.push_back({"d" + std::to_string(i), 50 + rng.uniform_index(900)});
  for (int i = 0; i < 9000; ++i) general.push_back({"g" + std::to_string(i), 50 + rng.uniform_index(900)});
  mixer::MixOptions o;
  o.target_total_tokens = 4'000'000;
  o.domain_fraction = 0.25;
  o.seed = 3;

  const auto plan = mixer::plan_mix(domain, general, o);
  const auto again = mixer::plan_mix(domain, general, o);
  const bool deterministic = plan.domain == again.domain && plan.general == again.general;

  std::map<std::string, std::size_t> d_tokens, g_tokens;
  for (const auto& p : domain) d_tokens[p.id] = p.tokens;
  for (const auto& p : general) g_tokens[p.id] = p.tokens;
  std::size_t d_sum = 0, g_sum = 0;
  std::set<std::string> seen;
  bool conserved = true;
  for (const auto& s : plan.domain) {
    conserved = conserved && d_tokens.count(s.id) && d_tokens[s.id] == s.tokens && seen.insert(s.id).second;
    d_sum += s.tokens;
  }
  for (const auto& s : plan.general) {
    conserved = conserved && g_tokens.count(s.id) && g_tokens[s.id] == s.tokens && seen.insert(s.id).second;
    g_sum += s.tokens;
  }
  conserved = conserved && d_sum == plan.domain_tokens && g_sum == plan.general_tokens;
  const double share = static_cast<double>(d_sum) / (d_sum + g_sum);
  const bool ok = std::abs(share - 0.25) <= 0.005 && conserved && deterministic;
  return {ok, "domain share=" + fmt("%.5f", share) + " conservation=" + (conserved ? "yes" : "no") +
                  " deterministic=" + (deterministic ? "yes" : "no")};
}

Outcome agreement_statistics() {
  using evalkit::Rating;
  auto verdict = [](std::string id, std::map<std::string, Rating> r) {
    evalkit::JudgeVerdict v;
    v.doc_id = std::move(id);
    v.ratings = std::move(r);
    return v;
  };
  const std::string fin = "Financial Services", hls = "Healthcare & Life Sciences";
  const std::vector<evalkit::JudgeVerdict> verdicts = {
      verdict("1", {{fin, Rating::kAgree}, {hls, Rating::kAgree}}),
      verdict("2", {{fin, Rating::kAgree}}),
      verdict("3", {{fin, Rating::kDisagree}, {hls, Rating::kDisagree}}),
      verdict("4", {{fin, Rating::kAgree}}),
  };
  // By hand: finance 3 of 4 = 75%, healthcare 1 of 2 = 50%, pooled 4 of 6.
  const auto s = evalkit::agreement_stats(verdicts);
  const bool exact = s.per_domain.at(fin).percent == 75.0 && s.per_domain.at(hls).percent == 50.0 &&
                     s.agree == 4 && s.total == 6 && std::abs(s.overall_percent - 400.0 / 6.0) < 1e-12;
  double weighted = 0.0;
  std::size_t n = 0;
  for (const auto& [d, a] : s.per_domain) {
    weighted += a.percent * (a.agree + a.disagree);
    n += a.agree + a.disagree;
  }
  const bool pooled = std::abs(weighted / n - s.overall_percent) < 1e-12;
  return {exact && pooled, "finance=" + fmt("%.2f%%", s.per_domain.at(fin).percent) +
                               " healthcare=" + fmt("%.2f%%", s.per_domain.at(hls).percent) +
                               " pooled=" + fmt("%.4f%%", s.overall_percent) +
                               " weighted mean matches=" + (pooled ? "yes" : "no")};
}

// ---------------------------------------------------------------------------

Outcome end_to_end() {
  const auto dir = scratch_dir("e2e");
  const auto fixture = pipeline::make_fixture({});
  pipeline::write_fixture(fixture, dir);
  const auto t0 = Clock::now();
  const auto config = pipeline::load_config(dir / "seedmine.json");
  {
    pipeline::PipelineLock lock(config.paths.lock());
    for (auto stage : pipeline::kStages) pipeline::run_stage(stage, config);
  }
  const double elapsed = seconds_since(t0);

  std::vector<miner::LabeledRecord> records;
  io::for_each_line(config.paths.labeled(), [&](std::size_t, std::string_view line) {
    records.push_back(miner::labeled_from_json(nlohmann::json::parse(line)));
  });
  const auto acc = pipeline::score_against_truth(records, pipeline::read_truth(dir / "truth.jsonl"));
  return {elapsed < 300.0 && acc.precision >= 0.9,
          "10 stages in " + fmt("%.1fs", elapsed) + "; mined-label precision=" + fmt("%.4f", acc.precision) +
              " recall=" + fmt("%.4f", acc.recall)};
}

Outcome ingest_determinism() {
  const auto fixture = pipeline::make_fixture({});
  const auto a = scratch_dir("ingest-a"), b = scratch_dir("ingest-b");
  pipeline::write_fixture(fixture, a);
  fs::copy_file(a / "corpus.jsonl", b / "corpus.jsonl");
  fs::copy_file(a / "seedmine.json", b / "seedmine.json");
  const auto ca = pipeline::load_config(a / "seedmine.json");
  const auto cb = pipeline::load_config(b / "seedmine.json");
  pipeline::run_stage("ingest", ca);
  pipeline::run_stage("ingest", cb);

  bool identical = true;
  for (const auto& out : pipeline::stage_outputs("ingest", ca)) {
    identical = identical && io::read_file(out) == io::read_file(cb.paths.work / out.filename());
  }

  std::set<std::uint64_t> hashes;
  std::size_t docs = 0;
  io::for_each_line(ca.paths.docs(), [&](std::size_t, std::string_view line) {
    const auto d = corpus::document_from_json(nlohmann::json::parse(line));
    hashes.insert(corpus::normalized_hash(d.text));
    ++docs;
  });
  std::vector<corpus::Document> raw;
  for (const auto& d : fixture.docs) raw.push_back(d.doc);
  const auto deduped = corpus::dedup_exact(raw);
  std::set<std::uint64_t> dedup_hashes;
  for (const auto& d : deduped) dedup_hashes.insert(corpus::normalized_hash(d.text));

  const bool unique = hashes.size() == docs && dedup_hashes.size() == deduped.size();
  return {identical && unique, std::string("ingest outputs byte-identical=") + (identical ? "yes" : "no") +
                                   "; duplicate normalized hashes after dedup=" +
                                   std::to_string(deduped.size() - dedup_hashes.size())};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"ann-fidelity", ann_fidelity},
      {"mining-oracle-equivalence", mining_equivalence},
      {"threshold-monotonicity", threshold_monotonicity},
      {"classifier", classifier_quality},
      {"lexical-metrics", lexical_metrics},
      {"prompt-fidelity", prompt_fidelity},
      {"mix-planning", mix_planning},
      {"agreement-statistics", agreement_statistics},
      {"end-to-end-hermetic", end_to_end},
      {"ingest-determinism", ingest_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::error_code ec;
  fs::remove_all(fs::temp_directory_path() / ("seedmine-acceptance-" + std::to_string(::getpid())), ec);
  return failures == 0 ? 0 : 1;
}
