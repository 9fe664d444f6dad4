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


#include "stages.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "seedmine/classifier/model.hpp"
#include "seedmine/corpus/chunker.hpp"
#include "seedmine/corpus/dedup.hpp"
#include "seedmine/corpus/filter.hpp"
#include "seedmine/corpus/records.hpp"
#include "seedmine/embed/store.hpp"
#include "seedmine/evalkit/judge.hpp"
#include "seedmine/evalkit/lexical.hpp"
#include "seedmine/index/hnsw.hpp"
#include "seedmine/miner/miner.hpp"
#include "seedmine/mixer/mixer.hpp"
#include "seedmine/pipeline/backends.hpp"
#include "seedmine/seedgen/batch.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"
#include "seedmine/util/parallel.hpp"

namespace seedmine::pipeline::stages {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void for_each_record(const fs::path& path, const std::function<void(const json&)>& fn) {
  io::for_each_line(path, [&](std::size_t line, std::string_view text) {
    if (text.empty()) return;
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw Error(ErrorCode::kMalformedRecord, path.string() + ":" + std::to_string(line) + ": not a JSON object");
    }
    try {
      fn(j);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord, path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  });
}

std::vector<corpus::Chunk> read_chunks(const fs::path& path) {
  std::vector<corpus::Chunk> out;
  for_each_record(path, [&](const json& j) { out.push_back(corpus::chunk_from_json(j)); });
  return out;
}

std::vector<corpus::Document> read_documents(const fs::path& path) {
  std::vector<corpus::Document> out;
  for_each_record(path, [&](const json& j) { out.push_back(corpus::document_from_json(j)); });
  return out;
}

std::vector<seedgen::SeedDocument> read_seeds(const fs::path& path) {
  std::vector<seedgen::SeedDocument> out;
  for_each_record(path, [&](const json& j) { out.push_back(seedgen::seed_from_json(j)); });
  return out;
}

std::vector<miner::LabeledRecord> read_labeled(const fs::path& path) {
  std::vector<miner::LabeledRecord> out;
  for_each_record(path, [&](const json& j) { out.push_back(miner::labeled_from_json(j)); });
  return out;
}

struct ClassifiedDoc {
  corpus::Document doc;
  std::vector<evalkit::ScoredLabel> predicted;
};

// Records that were classified without error.
std::vector<ClassifiedDoc> read_classified(const fs::path& path, std::size_t* errors = nullptr) {
  std::vector<ClassifiedDoc> out;
  for_each_record(path, [&](const json& j) {
    if (j.contains("error")) {
      if (errors) ++*errors;
      return;
    }
    ClassifiedDoc d;
    d.doc = corpus::Document::make(j.at("id").get<std::string>(), j.at("text").get<std::string>(),
                                   j.value("source", std::string{}));
    for (const auto& p : j.at("predicted")) {
      d.predicted.push_back({p.at("label").get<std::string>(), p.at("score").get<double>()});
    }
    out.push_back(std::move(d));
  });
  return out;
}

// Deterministic pseudo-random order over ids.
template <typename T, typename IdOf>
void hash_order(std::vector<T>& items, std::uint64_t seed, IdOf id_of) {
  std::sort(items.begin(), items.end(), [&](const T& a, const T& b) {
    const auto ha = hash_combine(seed, fnv1a64(id_of(a)));
    const auto hb = hash_combine(seed, fnv1a64(id_of(b)));
    if (ha != hb) return ha < hb;
    return id_of(a) < id_of(b);
  });
}

std::uint64_t stream_seed(const PipelineConfig& c, std::string_view purpose) {
  return hash_combine(c.seed, fnv1a64(purpose));
}

}  // namespace

json ingest(const PipelineConfig& c) {
  std::ifstream in(c.paths.corpus, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open corpus " + c.paths.corpus.string());

  io::AtomicFile rejects(c.paths.rejects());
  std::map<std::string, std::size_t> reject_counts;
  auto reject = [&](const std::string& id, std::string_view reason) {
    rejects.stream() << json{{"id", id}, {"reason", reason}}.dump() << '\n';
    ++reject_counts[std::string(reason)];
  };

  corpus::RecordReader reader(in);
  corpus::ExactDeduplicator exact;
  std::vector<corpus::Document> unique;
  std::size_t read = 0;
  while (auto doc = reader.next()) {
    ++read;
    if (exact.admit(*doc)) {
      unique.push_back(std::move(*doc));
    } else {
      reject(doc->id, corpus::to_string(corpus::RejectReason::kDuplicateExact));
    }
  }
  for (const auto& m : reader.malformed()) {
    rejects.stream() << json{{"line", m.line}, {"reason", "malformed"}, {"message", m.message}}.dump() << '\n';
    ++reject_counts["malformed"];
  }

  corpus::SubdocDeduplicator subdoc(c.ingest.subdoc_threshold);
  for (const auto& d : unique) subdoc.count(d);
  std::vector<corpus::Document> kept;
  std::size_t trimmed = 0;
  for (const auto& d : unique) {
    auto out = subdoc.apply(d);
    if (!out) {
      reject(d.id, corpus::to_string(corpus::RejectReason::kDuplicateSubdoc));
      continue;
    }
    if (out->text != d.text) ++trimmed;
    const auto verdict = corpus::quality_filter(*out, c.ingest.filter);
    if (!verdict.kept) {
      reject(out->id, corpus::to_string(*verdict.reason));
      continue;
    }
    kept.push_back(std::move(*out));
  }

  io::AtomicFile docs(c.paths.docs());
  io::AtomicFile chunks(c.paths.chunks());
  std::size_t n_chunks = 0, oversize = 0;
  for (const auto& d : kept) {
    docs.stream() << corpus::to_json(d).dump() << '\n';
    for (const auto& ch : corpus::chunk_document(d, c.ingest.max_chunk_words)) {
      chunks.stream() << corpus::to_json(ch).dump() << '\n';
      ++n_chunks;
      oversize += ch.oversize ? 1 : 0;
    }
  }
  docs.commit();
  chunks.commit();
  rejects.commit();

  return json{{"records_read", read},
              {"documents_kept", kept.size()},
              {"documents_trimmed_by_subdoc_dedup", trimmed},
              {"chunks", n_chunks},
              {"oversize_chunks", oversize},
              {"rejected", reject_counts}};
}

json embed(const PipelineConfig& c) {
  const auto chunks = read_chunks(c.paths.chunks());
  const auto embedder = make_embedder(c.embed);
  embed::EmbeddingStore store(embedder->dim());

  constexpr std::size_t kBlock = 1024;
  std::vector<std::string> texts;
  for (std::size_t begin = 0; begin < chunks.size(); begin += kBlock) {
    const std::size_t end = std::min(chunks.size(), begin + kBlock);
    texts.clear();
    for (std::size_t i = begin; i < end; ++i) texts.push_back(chunks[i].text);
    const auto vectors = embedder->embed_batch(texts);
    for (std::size_t i = begin; i < end; ++i) store.add(chunks[i].id(), vectors[i - begin].to_float());
    spdlog::debug("embedded {}/{} chunks", end, chunks.size());
  }
  store.save(c.paths.embeddings());
  return json{{"chunks", chunks.size()}, {"dim", store.dim()}, {"embedder", embedder->contract().name}};
}

json index(const PipelineConfig& c) {
  const auto store = embed::EmbeddingStore::load(c.paths.embeddings());
  if (store.dim() != c.index.dim) {
    throw Error(ErrorCode::kDimensionMismatch, "embeddings have dim " + std::to_string(store.dim()) +
                                                   " but embed.dim is " + std::to_string(c.index.dim));
  }
  index::HnswIndex idx(c.index);
  for (std::size_t i = 0; i < store.size(); ++i) idx.insert(store.id(i), store.vector(i));
  idx.persist(c.paths.index());
  return json{{"vectors", idx.size()}, {"max_level", idx.max_level()}};
}

json seedgen(const PipelineConfig& c) {
  const auto llm = make_generator(c.seedgen);
  seedgen::BatchOptions o;
  o.count = c.seedgen.count;
  o.multi_domain_prob = c.seedgen.multi_domain_prob;
  o.seed = stream_seed(c, "seedgen");
  o.max_failure_rate = c.seedgen.max_failure_rate;
  o.max_in_flight = c.seedgen.max_in_flight;
  o.generate.max_parse_retries = c.seedgen.max_parse_retries;
  o.generate.max_tokens = c.seedgen.max_tokens;
  o.generate.temperature = c.seedgen.temperature;
  const auto result = seedgen::generate_batch(c.seedgen.domains, *llm, o);

  io::AtomicFile out(c.paths.seeds());
  std::map<std::string, std::size_t> per_domain;
  std::size_t multi = 0;
  for (const auto& s : result.seeds) {
    out.stream() << seedgen::to_json(s).dump() << '\n';
    ++per_domain[s.domain];
    multi += s.spec.industries.size() > 1 ? 1 : 0;
  }
  out.commit();
  return json{{"seeds", result.seeds.size()},
              {"attempts", result.attempts},
              {"failures", result.failures},
              {"multi_domain_seeds", multi},
              {"per_domain", per_domain}};
}

json mine(const PipelineConfig& c) {
  const auto idx = index::HnswIndex::load(c.paths.index());
  const auto seeds = read_seeds(c.paths.seeds());
  const auto embedder = make_embedder(c.embed);
  if (embedder->dim() != idx.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedder dim " + std::to_string(embedder->dim()) +
                                                   " differs from index dim " + std::to_string(idx.dim()));
  }
  std::unordered_map<std::string, std::string> texts;
  for (auto& ch : read_chunks(c.paths.chunks())) texts.emplace(ch.id(), std::move(ch.text));

  std::vector<std::string> documents;
  documents.reserve(seeds.size());
  for (const auto& s : seeds) documents.push_back(s.fields.document);
  const auto vectors = embedder->embed_batch(documents);

  std::vector<miner::SeedHits> hits(seeds.size());
  parallel_for(seeds.size(), c.mine.threads, [&](std::size_t i) {
    const auto v = vectors[i].to_float();
    hits[i] = {seeds[i].seed_id, seeds[i].spec.industries, miner::mine_neighbors(v, idx, c.mine.params)};
  });
  const auto records = miner::assign_labels(hits, c.mine.params.evidence_cap, &texts);

  io::AtomicFile labeled(c.paths.labeled());
  std::map<std::string, std::size_t> per_label;
  std::size_t multi = 0, total_hits = 0;
  for (const auto& h : hits) total_hits += h.neighbors.size();
  for (const auto& r : records) {
    labeled.stream() << miner::to_json(r).dump() << '\n';
    for (const auto& l : r.labels) ++per_label[l];
    multi += r.labels.size() > 1 ? 1 : 0;
  }
  io::AtomicFile doc_labels(c.paths.doc_labels());
  const auto rolled = miner::rollup_documents(records);
  for (const auto& [doc, labels] : rolled) doc_labels.stream() << json{{"id", doc}, {"labels", labels}}.dump() << '\n';
  labeled.commit();
  doc_labels.commit();

  return json{{"seeds", seeds.size()},
              {"thresholded_hits", total_hits},
              {"labeled_chunks", records.size()},
              {"multi_label_chunks", multi},
              {"labeled_documents", rolled.size()},
              {"per_label", per_label},
              {"index_size", idx.size()}};
}

json train(const PipelineConfig& c) {
  const auto labeled = read_labeled(c.paths.labeled());
  std::vector<classifier::Example> examples;
  std::unordered_set<std::string> mined;
  for (const auto& r : labeled) {
    examples.push_back(miner::to_example(r));
    mined.insert(r.doc_id);
  }

  // Negatives: unmined chunks, as many as the ratio asks for.
  std::unordered_map<std::string, std::string> texts;
  std::vector<std::string> candidates;
  for (auto& ch : read_chunks(c.paths.chunks())) {
    candidates.push_back(ch.id());
    texts.emplace(ch.id(), std::move(ch.text));
  }
  const auto wanted = static_cast<std::size_t>(std::llround(c.train.negative_ratio * labeled.size()));
  const auto negatives = miner::sample_negatives(candidates, mined, wanted, stream_seed(c, "negatives"));
  for (const auto& id : negatives) examples.push_back({id, texts.at(id), {}});

  const auto split = miner::build_training_set(std::move(examples), c.train.split, c.train.min_per_label);
  auto model = classifier::train(split.train, split.dev, c.train.hyper);
  model.metadata["train_records"] = split.train.size();
  model.metadata["dev_records"] = split.dev.size();
  model.metadata["test_records"] = split.test.size();
  model.metadata["negatives"] = negatives.size();
  const auto report = classifier::evaluate(model, split.test, c.train.hyper.threshold);

  json eval = classifier::to_json(report);
  eval["train_label_counts"] = split.train_label_counts;
  eval["dev_label_counts"] = split.dev_label_counts;
  eval["test_label_counts"] = split.test_label_counts;
  model.save(c.paths.model());
  io::write_file_atomic(c.paths.test_eval(), eval.dump(2) + "\n");

  return json{{"mined_records", labeled.size()},
              {"negatives", negatives.size()},
              {"train", split.train.size()},
              {"dev", split.dev.size()},
              {"test", split.test.size()},
              {"best_epoch", model.metadata.value("best_epoch", json())},
              {"best_dev_micro_f1", model.metadata.value("best_dev_micro_f1", json())},
              {"test_micro_f1", report.micro_f1},
              {"test_macro_f1", report.macro_f1}};
}

json classify(const PipelineConfig& c) {
  const auto model = classifier::ClassifierModel::load(c.paths.model());
  std::ifstream in(c.paths.docs(), std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + c.paths.docs().string());
  io::AtomicFile out(c.paths.classified());
  const auto stats = classifier::classify_corpus(model, in, out.stream(), c.classify.threshold, c.classify.threads);
  out.commit();

  std::map<std::string, std::size_t> per_label;
  std::size_t unlabeled = 0;
  for (const auto& d : read_classified(c.paths.classified())) {
    for (const auto& p : d.predicted) ++per_label[p.label];
    unlabeled += d.predicted.empty() ? 1 : 0;
  }
  return json{{"records", stats.records},
              {"errors", stats.errors},
              {"unlabeled", unlabeled},
              {"per_label", per_label}};
}

json metrics(const PipelineConfig& c) {
  auto docs = read_documents(c.paths.docs());
  hash_order(docs, stream_seed(c, "metrics"), [](const corpus::Document& d) -> const std::string& { return d.id; });
  if (docs.size() > c.metrics.max_real_docs) docs.resize(c.metrics.max_real_docs);
  std::vector<std::string> real, synthetic;
  for (auto& d : docs) real.push_back(std::move(d.text));
  for (auto& s : read_seeds(c.paths.seeds())) synthetic.push_back(std::move(s.fields.document));

  const auto cmp = evalkit::compare_corpora(real, synthetic);
  io::write_file_atomic(c.paths.metrics(), evalkit::to_json(cmp).dump(2) + "\n");
  io::write_file_atomic(c.paths.metrics_table(), evalkit::render_table(cmp));
  return json{{"real_documents", real.size()}, {"synthetic_documents", synthetic.size()}};
}

json judge(const PipelineConfig& c) {
  auto docs = read_classified(c.paths.classified());
  std::erase_if(docs, [](const ClassifiedDoc& d) { return d.predicted.empty(); });
  if (docs.empty()) throw Error(ErrorCode::kPreconditionViolated, "no classified document has a predicted label");
  hash_order(docs, stream_seed(c, "judge-sample"),
             [](const ClassifiedDoc& d) -> const std::string& { return d.doc.id; });
  if (docs.size() > c.judge.sample_size) docs.resize(c.judge.sample_size);
  std::sort(docs.begin(), docs.end(), [](const ClassifiedDoc& a, const ClassifiedDoc& b) { return a.doc.id < b.doc.id; });

  const auto llm = make_judge(c.judge);
  std::vector<evalkit::JudgeVerdict> verdicts(docs.size());
  parallel_for(docs.size(), c.judge.max_in_flight, [&](std::size_t i) {
    verdicts[i] = evalkit::judge_document(docs[i].doc.id, docs[i].doc.text, docs[i].predicted, c.seedgen.domains, *llm,
                                          stream_seed(c, "judge"), c.judge.max_retries);
  });
  const auto stats = evalkit::agreement_stats(verdicts);

  io::AtomicFile out(c.paths.verdicts());
  for (const auto& v : verdicts) out.stream() << evalkit::to_json(v).dump() << '\n';
  out.commit();
  io::write_file_atomic(c.paths.agreement(), evalkit::to_json(stats).dump(2) + "\n");
  return json{{"judged_documents", verdicts.size()},
              {"ratings", stats.total},
              {"overall_percent", stats.overall_percent}};
}

json mix(const PipelineConfig& c) {
  std::size_t errors = 0;
  const auto docs = read_classified(c.paths.classified(), &errors);
  mixer::DocStore domain_store, general_store;
  std::vector<corpus::Document> domain_docs, general_docs;
  for (const auto& d : docs) {
    const bool in_domain = std::any_of(d.predicted.begin(), d.predicted.end(),
                                       [&](const evalkit::ScoredLabel& p) { return p.label == c.mix.domain; });
    (in_domain ? domain_docs : general_docs).push_back(d.doc);
    (in_domain ? domain_store : general_store).emplace(d.doc.id, d.doc);
  }
  const auto domain_counts = mixer::count_tokens(domain_docs);
  const auto general_counts = mixer::count_tokens(general_docs);

  mixer::MixOptions o;
  o.domain_fraction = c.mix.domain_fraction;
  o.seed = stream_seed(c, "mix");
  o.allow_repetition = c.mix.allow_repetition;
  o.tolerance = c.mix.tolerance;
  o.target_total_tokens = c.mix.target_total_tokens;
  if (o.target_total_tokens == 0) {
    // Largest total both pools can cover without repetition, less a margin
    // for the overshoot of the last document on each side.
    const double by_domain = domain_counts.total / o.domain_fraction;
    const double by_general = general_counts.total / (1.0 - o.domain_fraction);
    o.target_total_tokens = static_cast<std::size_t>(0.9 * std::min(by_domain, by_general));
  }
  const auto plan = mixer::plan_mix(domain_counts.docs, general_counts.docs, o);

  json manifest = mixer::to_json(plan);
  manifest["domain"] = c.mix.domain;
  manifest["domain_pool"] = {{"documents", domain_counts.docs.size()}, {"tokens", domain_counts.total}};
  manifest["general_pool"] = {{"documents", general_counts.docs.size()}, {"tokens", general_counts.total}};
  io::AtomicFile out(c.paths.mix());
  const auto written = mixer::write_mix(plan, domain_store, general_store, out.stream());
  out.commit();
  io::write_file_atomic(c.paths.mix_manifest(), manifest.dump(2) + "\n");

  return json{{"target_total_tokens", o.target_total_tokens},
              {"domain_tokens", plan.domain_tokens},
              {"general_tokens", plan.general_tokens},
              {"achieved_fraction", plan.achieved_fraction},
              {"records_written", written},
              {"classification_errors_skipped", errors}};
}

}  // namespace seedmine::pipeline::stages
