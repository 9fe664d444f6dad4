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


#include "seedmine/pipeline/config.hpp"

#include <cstdlib>
#include <initializer_list>
#include <set>

#include "seedmine/seedgen/dimensions.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/io.hpp"

namespace seedmine::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::kConfigError, msg); }

const json& object_or_empty(const json& doc, const char* key) {
  static const json empty = json::object();
  const auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return empty;
  if (!it->is_object()) config_error(std::string(key) + " must be an object");
  return *it;
}

// Misspelled keys would otherwise be silently ignored.
void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.count(item.key())) config_error("unknown key " + where + "." + item.key());
  }
}

ServiceConfig decode_service(const json& j, const std::string& where) {
  ServiceConfig s;
  const auto backend = j.value("backend", std::string("stub"));
  if (backend == "stub") {
    s.backend = Backend::kStub;
  } else if (backend == "remote") {
    s.backend = Backend::kRemote;
  } else {
    config_error(where + ".backend must be \"stub\" or \"remote\", got \"" + backend + "\"");
  }
  s.url = j.value("url", std::string{});
  s.token_env = j.value("token_env", std::string{});
  s.retry.max_retries = j.value("max_retries", s.retry.max_retries);
  s.retry.timeout = std::chrono::milliseconds(j.value("timeout_ms", static_cast<long>(s.retry.timeout.count())));
  s.retry.initial_backoff =
      std::chrono::milliseconds(j.value("backoff_ms", static_cast<long>(s.retry.initial_backoff.count())));
  if (s.backend == Backend::kRemote) {
    if (s.url.empty()) config_error(where + ".url is required for the remote backend");
    http::Endpoint::parse(s.url);
  }
  if (s.retry.max_retries < 0) config_error(where + ".max_retries must be >= 0");
  return s;
}

#define SERVICE_KEYS "backend", "url", "token_env", "max_retries", "timeout_ms", "backoff_ms"

fs::path resolve(const fs::path& root, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : root / path;
}

void decode_into(PipelineConfig& c, const fs::path& root) {
  const json& raw = c.raw;
  check_keys(raw, "", {"seed", "paths", "ingest", "embed", "index", "seedgen", "mine", "train", "classify", "metrics",
                       "judge", "mix"});
  c.seed = raw.value("seed", c.seed);

  const json& paths = object_or_empty(raw, "paths");
  check_keys(paths, "paths", {"corpus", "work", "reports"});
  c.paths.root = root;
  c.paths.corpus = resolve(root, paths.value("corpus", std::string("corpus.jsonl")));
  c.paths.work = resolve(root, paths.value("work", std::string("work")));
  c.paths.reports = resolve(root, paths.value("reports", std::string("reports")));

  const json& ingest = object_or_empty(raw, "ingest");
  check_keys(ingest, "ingest", {"filter", "subdoc_threshold", "max_chunk_words"});
  const json& filter = object_or_empty(ingest, "filter");
  check_keys(filter, "ingest.filter",
             {"min_tokens", "max_words", "min_mean_word_length", "max_mean_word_length", "max_symbol_ratio",
              "min_alpha_word_ratio", "max_bullet_line_ratio", "max_ellipsis_line_ratio"});
  c.ingest.filter = filter.get<corpus::FilterRules>();
  c.ingest.filter.validate();
  c.ingest.subdoc_threshold = ingest.value("subdoc_threshold", c.ingest.subdoc_threshold);
  c.ingest.max_chunk_words = ingest.value("max_chunk_words", c.ingest.max_chunk_words);
  if (c.ingest.subdoc_threshold < 2) config_error("ingest.subdoc_threshold must be >= 2");
  if (c.ingest.max_chunk_words == 0) config_error("ingest.max_chunk_words must be positive");

  const json& embed = object_or_empty(raw, "embed");
  check_keys(embed, "embed", {SERVICE_KEYS, "dim", "batch_size", "max_in_flight"});
  c.embed.service = decode_service(embed, "embed");
  c.embed.dim = embed.value("dim", c.embed.dim);
  c.embed.batch_size = embed.value("batch_size", c.embed.batch_size);
  c.embed.max_in_flight = embed.value("max_in_flight", c.embed.max_in_flight);
  if (c.embed.dim == 0 || c.embed.batch_size == 0 || c.embed.max_in_flight == 0) {
    config_error("embed.dim, embed.batch_size and embed.max_in_flight must be positive");
  }

  const json& index = object_or_empty(raw, "index");
  check_keys(index, "index", {"m", "ef_construction", "ef_search"});
  c.index = index.get<index::IndexParams>();
  c.index.dim = c.embed.dim;
  c.index.seed = c.seed;
  c.index.validate();

  const json& sg = object_or_empty(raw, "seedgen");
  check_keys(sg, "seedgen",
             {SERVICE_KEYS, "domains", "count", "multi_domain_prob", "max_failure_rate", "max_parse_retries",
              "max_in_flight", "max_tokens", "temperature", "stub"});
  c.seedgen.service = decode_service(sg, "seedgen");
  c.seedgen.domains = sg.value("domains", std::vector<std::string>{});
  c.seedgen.count = sg.value("count", c.seedgen.count);
  c.seedgen.multi_domain_prob = sg.value("multi_domain_prob", c.seedgen.multi_domain_prob);
  c.seedgen.max_failure_rate = sg.value("max_failure_rate", c.seedgen.max_failure_rate);
  c.seedgen.max_parse_retries = sg.value("max_parse_retries", c.seedgen.max_parse_retries);
  c.seedgen.max_in_flight = sg.value("max_in_flight", c.seedgen.max_in_flight);
  c.seedgen.max_tokens = sg.value("max_tokens", c.seedgen.max_tokens);
  c.seedgen.temperature = sg.value("temperature", c.seedgen.temperature);
  if (c.seedgen.domains.empty()) config_error("seedgen.domains must list at least one industry");
  for (const auto& d : c.seedgen.domains) {
    if (!seedgen::is_industry(d)) config_error("seedgen.domains: unknown industry \"" + d + "\"");
  }
  if (c.seedgen.count == 0) config_error("seedgen.count must be positive");
  if (c.seedgen.multi_domain_prob < 0.0 || c.seedgen.multi_domain_prob > 1.0) {
    config_error("seedgen.multi_domain_prob must be in [0, 1]");
  }
  if (c.seedgen.max_failure_rate < 0.0 || c.seedgen.max_failure_rate >= 1.0) {
    config_error("seedgen.max_failure_rate must be in [0, 1)");
  }
  if (c.seedgen.max_in_flight == 0) config_error("seedgen.max_in_flight must be positive");
  const json& stub = object_or_empty(sg, "stub");
  check_keys(stub, "seedgen.stub", {"kind", "vocabularies", "document_words", "completions", "mode"});
  c.seedgen.stub_kind = stub.value("kind", c.seedgen.stub_kind);
  c.seedgen.vocabularies =
      stub.value("vocabularies", std::map<std::string, std::vector<std::string>>{});
  c.seedgen.document_words = stub.value("document_words", c.seedgen.document_words);
  c.seedgen.canned = stub.value("completions", std::vector<std::string>{});
  c.seedgen.canned_mode = stub.value("mode", c.seedgen.canned_mode);
  if (c.seedgen.service.backend == Backend::kStub) {
    if (c.seedgen.stub_kind == "vocabulary") {
      for (const auto& d : c.seedgen.domains) {
        const auto it = c.seedgen.vocabularies.find(d);
        if (it == c.seedgen.vocabularies.end() || it->second.empty()) {
          config_error("seedgen.stub.vocabularies has no words for \"" + d + "\"");
        }
      }
    } else if (c.seedgen.stub_kind == "canned") {
      if (c.seedgen.canned.empty()) config_error("seedgen.stub.completions must not be empty");
      if (c.seedgen.canned_mode != "prompt_hash" && c.seedgen.canned_mode != "round_robin") {
        config_error("seedgen.stub.mode must be \"prompt_hash\" or \"round_robin\"");
      }
    } else {
      config_error("seedgen.stub.kind must be \"vocabulary\" or \"canned\"");
    }
  }

  const json& mine = object_or_empty(raw, "mine");
  check_keys(mine, "mine", {"k", "t_sim", "ef_search", "evidence_cap", "threads"});
  c.mine.params = mine.get<miner::MiningParams>();
  c.mine.params.validate();
  c.mine.threads = mine.value("threads", c.mine.threads);
  if (c.mine.threads == 0) config_error("mine.threads must be positive");

  const json& train = object_or_empty(raw, "train");
  check_keys(train, "train", {"split", "min_per_label", "negative_ratio", "hyper"});
  const json& split = object_or_empty(train, "split");
  check_keys(split, "train.split", {"train", "dev", "test"});
  c.train.split.train = split.value("train", c.train.split.train);
  c.train.split.dev = split.value("dev", c.train.split.dev);
  c.train.split.test = split.value("test", c.train.split.test);
  c.train.min_per_label = train.value("min_per_label", c.train.min_per_label);
  c.train.negative_ratio = train.value("negative_ratio", c.train.negative_ratio);
  if (c.train.negative_ratio < 0.0) config_error("train.negative_ratio must be >= 0");
  const json& hyper = object_or_empty(train, "hyper");
  check_keys(hyper, "train.hyper",
             {"learning_rate", "epochs", "l2", "buckets", "max_order", "seed", "threshold", "max_restarts"});
  c.train.hyper = hyper.get<classifier::Hyperparams>();
  if (!hyper.contains("seed")) c.train.hyper.seed = c.seed;
  c.train.hyper.validate();

  const json& classify = object_or_empty(raw, "classify");
  check_keys(classify, "classify", {"threshold", "threads"});
  c.classify.threshold = classify.value("threshold", c.classify.threshold);
  c.classify.threads = classify.value("threads", c.classify.threads);
  if (c.classify.threads == 0) config_error("classify.threads must be positive");

  const json& metrics = object_or_empty(raw, "metrics");
  check_keys(metrics, "metrics", {"max_real_docs"});
  c.metrics.max_real_docs = metrics.value("max_real_docs", c.metrics.max_real_docs);
  if (c.metrics.max_real_docs == 0) config_error("metrics.max_real_docs must be positive");

  const json& judge = object_or_empty(raw, "judge");
  check_keys(judge, "judge", {SERVICE_KEYS, "sample_size", "judge_retries", "max_in_flight", "stub_disagree"});
  c.judge.service = decode_service(judge, "judge");
  c.judge.sample_size = judge.value("sample_size", c.judge.sample_size);
  c.judge.max_retries = judge.value("judge_retries", c.judge.max_retries);
  c.judge.max_in_flight = judge.value("max_in_flight", c.judge.max_in_flight);
  c.judge.stub_disagree = judge.value("stub_disagree", std::vector<std::string>{});
  if (c.judge.sample_size == 0 || c.judge.max_in_flight == 0) {
    config_error("judge.sample_size and judge.max_in_flight must be positive");
  }

  const json& mix = object_or_empty(raw, "mix");
  check_keys(mix, "mix", {"domain", "domain_fraction", "target_total_tokens", "allow_repetition", "tolerance"});
  c.mix.domain = mix.value("domain", c.seedgen.domains.front());
  c.mix.domain_fraction = mix.value("domain_fraction", c.mix.domain_fraction);
  c.mix.target_total_tokens = mix.value("target_total_tokens", c.mix.target_total_tokens);
  c.mix.allow_repetition = mix.value("allow_repetition", c.mix.allow_repetition);
  c.mix.tolerance = mix.value("tolerance", c.mix.tolerance);
  if (!seedgen::is_industry(c.mix.domain)) config_error("mix.domain: unknown industry \"" + c.mix.domain + "\"");
  if (!(c.mix.domain_fraction > 0.0 && c.mix.domain_fraction < 1.0)) {
    config_error("mix.domain_fraction must be in (0, 1)");
  }
  if (c.mix.tolerance < 0.0) config_error("mix.tolerance must be >= 0");
}

#undef SERVICE_KEYS

}  // namespace

std::string ServiceConfig::bearer_token() const {
  if (token_env.empty()) return {};
  const char* v = std::getenv(token_env.c_str());
  return v ? std::string(v) : std::string{};
}

nlohmann::json PipelineConfig::section(const std::string& name) const {
  const auto it = raw.find(name);
  return it == raw.end() ? nlohmann::json() : *it;
}

void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) config_error("override must look like key.path=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) config_error("empty component in override key: " + key);
    if (!node->is_object()) {
      if (!node->is_null()) config_error("override path crosses a non-object at " + part + ": " + key);
      *node = json::object();
    }
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  *node = std::move(parsed);
}

PipelineConfig decode_config(nlohmann::json raw, const std::filesystem::path& root) {
  if (!raw.is_object()) config_error("config root must be an object");
  PipelineConfig c;
  c.raw = std::move(raw);
  try {
    decode_into(c, root);
  } catch (const nlohmann::json::exception& e) {
    config_error(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    config_error(e.what());
  }
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides,
                           std::optional<std::uint64_t> seed) {
  std::string text;
  try {
    text = io::read_file(path);
  } catch (const Error&) {
    config_error("cannot read config file " + path.string());
  }
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) config_error("config file is not valid JSON: " + path.string());
  for (const auto& o : overrides) apply_override(doc, o);
  if (seed) doc["seed"] = *seed;
  auto root = fs::absolute(path).parent_path();
  return decode_config(std::move(doc), root);
}

}  // namespace seedmine::pipeline
