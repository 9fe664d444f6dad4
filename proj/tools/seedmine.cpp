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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "seedmine/pipeline/config.hpp"
#include "seedmine/pipeline/fixture.hpp"
#include "seedmine/pipeline/runner.hpp"
#include "seedmine/util/error.hpp"

namespace {

namespace fs = std::filesystem;
namespace pl = seedmine::pipeline;
using seedmine::Error;
using seedmine::ErrorCode;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  bool force = false;
};

// Stage flags that are shorthands for --set.
struct Shorthand {
  const char* flag;
  const char* key;
  const char* help;
};

const std::vector<std::pair<std::string, std::vector<Shorthand>>> kShorthands = {
    {"ingest",
     {{"--min-tokens", "ingest.filter.min_tokens", "minimum whitespace tokens per document"},
      {"--max-words", "ingest.filter.max_words", "maximum words per document"},
      {"--min-mean-word-length", "ingest.filter.min_mean_word_length", "lower bound on mean word length"},
      {"--max-mean-word-length", "ingest.filter.max_mean_word_length", "upper bound on mean word length"},
      {"--max-symbol-ratio", "ingest.filter.max_symbol_ratio", "'#' and ellipses per word"},
      {"--min-alpha-word-ratio", "ingest.filter.min_alpha_word_ratio", "share of words with a letter"},
      {"--max-bullet-line-ratio", "ingest.filter.max_bullet_line_ratio", "share of lines starting with a bullet"},
      {"--max-ellipsis-line-ratio", "ingest.filter.max_ellipsis_line_ratio", "share of lines ending in an ellipsis"},
      {"--subdoc-threshold", "ingest.subdoc_threshold", "paragraph frequency that triggers removal"},
      {"--max-chunk-words", "ingest.max_chunk_words", "chunk word budget"}}},
    {"embed", {{"--dim", "embed.dim", "embedding dimension"}}},
    {"index",
     {{"--m", "index.m", "graph degree"},
      {"--ef-construction", "index.ef_construction", "build-time beam width"},
      {"--ef-search", "index.ef_search", "default query beam width"}}},
    {"seedgen",
     {{"--count", "seedgen.count", "seeds per domain"},
      {"--multi-domain-prob", "seedgen.multi_domain_prob", "chance of a two-industry seed"}}},
    {"mine",
     {{"--k", "mine.k", "neighbors per seed"},
      {"--t-sim", "mine.t_sim", "similarity threshold"},
      {"--ef-search", "mine.ef_search", "query beam width"},
      {"--threads", "mine.threads", "query threads"}}},
    {"train",
     {{"--epochs", "train.hyper.epochs", "training epochs"},
      {"--learning-rate", "train.hyper.learning_rate", "SGD step size"},
      {"--l2", "train.hyper.l2", "L2 penalty"},
      {"--min-per-label", "train.min_per_label", "training floor per label"}}},
    {"classify",
     {{"--threshold", "classify.threshold", "score threshold"}, {"--threads", "classify.threads", "worker threads"}}},
    {"metrics", {{"--max-real-docs", "metrics.max_real_docs", "real documents sampled"}}},
    {"judge", {{"--sample-size", "judge.sample_size", "documents sent to the judge"}}},
    {"mix",
     {{"--domain", "mix.domain", "industry of the domain pool"},
      {"--fraction", "mix.domain_fraction", "domain share of tokens"},
      {"--target-tokens", "mix.target_total_tokens", "total tokens (0: automatic)"},
      {"--allow-repetition", "mix.allow_repetition", "reuse documents when a pool runs out (true/false)"}}},
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("-c,--config", args.config, "pipeline config file")->envname("SEEDMINE_CONFIG")->required();
  cmd->add_option("--seed", args.seed, "global seed, overriding the config");
  cmd->add_option("--set", args.overrides, "config override key.path=value (repeatable)");
  cmd->add_flag("--force", args.force, "run even when the checkpoint is current");
}

int fail(std::string_view stage, const Error& e) {
  std::cerr << pl::error_line(stage, e) << std::endl;
  return pl::exit_code(e.code());
}

int run_stages(const std::vector<std::string>& stages, const CommonArgs& args) {
  std::string current = stages.size() == 1 ? stages.front() : "all";
  try {
    const auto config = pl::load_config(args.config, args.overrides, args.seed);
    pl::PipelineLock lock(config.paths.lock());
    for (const auto& s : stages) {
      current = s;
      std::cout << pl::status_line(pl::run_stage(s, config, args.force)) << std::endl;
    }
    return 0;
  } catch (const Error& e) {
    return fail(current, e);
  } catch (const std::exception& e) {
    return fail(current, Error(ErrorCode::kIoFailure, e.what()));
  }
}

int show_status(const CommonArgs& args) {
  try {
    const auto config = pl::load_config(args.config, args.overrides, args.seed);
    for (auto stage : pl::kStages) {
      std::string state;
      try {
        const auto key = pl::checkpoint_key(stage, config);
        const auto report = config.paths.report(std::string(stage));
        state = "pending";
        if (fs::exists(report)) {
          const auto j = nlohmann::json::parse(std::ifstream(report), nullptr, false);
          if (!j.is_discarded() && j.value("checkpoint_key", std::string{}) == key) state = "done";
          else if (!j.is_discarded()) state = "stale";
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPrerequisiteMissing) throw;
        state = "blocked";
      }
      std::cout << nlohmann::json{{"stage", stage}, {"state", state}}.dump() << '\n';
    }
    return 0;
  } catch (const Error& e) {
    return fail("status", e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("seedmine");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] [%l] %v");

  CLI::App app{"seedmine: seed-guided domain mining pipeline"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  CommonArgs args;
  std::vector<std::string> shorthand_values(64);
  std::vector<std::pair<CLI::App*, std::vector<std::pair<CLI::Option*, const char*>>>> stage_cmds;
  std::size_t slot = 0;
  for (auto stage : pl::kStages) {
    auto* cmd = app.add_subcommand(std::string(stage), "run the " + std::string(stage) + " stage");
    add_common(cmd, args);
    std::vector<std::pair<CLI::Option*, const char*>> flags;
    for (const auto& [name, shorthands] : kShorthands) {
      if (name != stage) continue;
      for (const auto& s : shorthands) {
        flags.emplace_back(cmd->add_option(s.flag, shorthand_values.at(slot++), s.help), s.key);
      }
    }
    stage_cmds.emplace_back(cmd, std::move(flags));
  }
  auto* all = app.add_subcommand("all", "run every stage in order");
  add_common(all, args);
  auto* status = app.add_subcommand("status", "show which stages are done, stale, pending or blocked");
  add_common(status, args);

  std::string fixture_out;
  std::uint64_t fixture_seed = 7;
  bool fixture_small = false;
  auto* fixture = app.add_subcommand("fixture", "write the synthetic 3-domain corpus, its truth and a stub config");
  fixture->add_option("-o,--out", fixture_out, "output directory")->required();
  fixture->add_option("--seed", fixture_seed, "fixture seed");
  fixture->add_flag("--small", fixture_small, "a reduced corpus for quick runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << pl::error_line("cli", Error(ErrorCode::kConfigError, e.what())) << std::endl;
    return 1;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));

  if (fixture->parsed()) {
    try {
      pl::FixtureOptions o;
      o.seed = fixture_seed;
      if (fixture_small) {
        o.pure_per_domain = 60;
        o.mixed_per_pair = 20;
        o.general_docs = 60;
        o.seeds_per_domain = 30;
      }
      pl::write_fixture(pl::make_fixture(o), fixture_out);
      std::cout << nlohmann::json{{"status", "ok"}, {"stage", "fixture"}, {"out", fixture_out}}.dump() << std::endl;
      return 0;
    } catch (const Error& e) {
      return fail("fixture", e);
    }
  }
  if (status->parsed()) return show_status(args);
  if (all->parsed()) return run_stages(std::vector<std::string>(pl::kStages.begin(), pl::kStages.end()), args);

  for (const auto& [cmd, flags] : stage_cmds) {
    if (!cmd->parsed()) continue;
    for (const auto& [opt, key] : flags) {
      if (opt->count() > 0) args.overrides.push_back(std::string(key) + "=" + opt->as<std::string>());
    }
    return run_stages({cmd->get_name()}, args);
  }
  return 1;
}
