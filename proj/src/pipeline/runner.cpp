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


#include "seedmine/pipeline/runner.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <functional>
#include <map>

#include <spdlog/spdlog.h>

#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"
#include "stages.hpp"

namespace seedmine::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Bump when a stage's output format changes so old checkpoints go stale.
constexpr int kCheckpointVersion = 1;

struct StageDef {
  std::string_view name;
  std::vector<std::string> sections;
  std::function<std::vector<fs::path>(const Paths&)> inputs;
  std::function<std::vector<fs::path>(const Paths&)> outputs;
  std::function<json(const PipelineConfig&)> run;
};

const std::vector<StageDef>& stage_defs() {
  static const std::vector<StageDef> defs = {
      {"ingest", {"ingest"}, [](const Paths& p) { return std::vector<fs::path>{p.corpus}; },
       [](const Paths& p) { return std::vector<fs::path>{p.docs(), p.chunks(), p.rejects()}; }, stages::ingest},
      {"embed", {"embed"}, [](const Paths& p) { return std::vector<fs::path>{p.chunks()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.embeddings()}; }, stages::embed},
      {"index", {"index", "embed"}, [](const Paths& p) { return std::vector<fs::path>{p.embeddings()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.index()}; }, stages::index},
      {"seedgen", {"seedgen"}, [](const Paths&) { return std::vector<fs::path>{}; },
       [](const Paths& p) { return std::vector<fs::path>{p.seeds()}; }, stages::seedgen},
      {"mine", {"mine", "embed"},
       [](const Paths& p) { return std::vector<fs::path>{p.index(), p.seeds(), p.chunks()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.labeled(), p.doc_labels()}; }, stages::mine},
      {"train", {"train"}, [](const Paths& p) { return std::vector<fs::path>{p.labeled(), p.chunks()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.model(), p.test_eval()}; }, stages::train},
      {"classify", {"classify"}, [](const Paths& p) { return std::vector<fs::path>{p.model(), p.docs()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.classified()}; }, stages::classify},
      {"metrics", {"metrics"}, [](const Paths& p) { return std::vector<fs::path>{p.docs(), p.seeds()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.metrics(), p.metrics_table()}; }, stages::metrics},
      {"judge", {"judge", "seedgen"}, [](const Paths& p) { return std::vector<fs::path>{p.classified()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.verdicts(), p.agreement()}; }, stages::judge},
      {"mix", {"mix", "seedgen"}, [](const Paths& p) { return std::vector<fs::path>{p.classified()}; },
       [](const Paths& p) { return std::vector<fs::path>{p.mix_manifest(), p.mix()}; }, stages::mix},
  };
  return defs;
}

const StageDef& def_of(std::string_view stage) {
  for (const auto& d : stage_defs()) {
    if (d.name == stage) return d;
  }
  throw Error(ErrorCode::kConfigError, "unknown stage \"" + std::string(stage) + "\"");
}

// Which stage writes `path`, for prerequisite messages.
std::string producer_of(const fs::path& path, const Paths& paths) {
  for (const auto& d : stage_defs()) {
    for (const auto& out : d.outputs(paths)) {
      if (out == path) return std::string(d.name);
    }
  }
  return {};
}

std::string display(const fs::path& p, const fs::path& root) {
  const auto rel = p.lexically_relative(root);
  if (rel.empty() || *rel.begin() == "..") return p.string();
  return rel.generic_string();
}

json section_json(const StageDef& def, const PipelineConfig& c) {
  json s = json::object();
  for (const auto& name : def.sections) s[name] = c.section(name);
  return s;
}

bool outputs_match(const json& report, const std::vector<fs::path>& outputs, const fs::path& root) {
  const auto it = report.find("outputs");
  if (it == report.end() || !it->is_object() || it->size() != outputs.size()) return false;
  for (const auto& out : outputs) {
    const auto key = display(out, root);
    if (!it->contains(key) || !fs::exists(out)) return false;
    if (it->at(key) != io::content_hash(out)) return false;
  }
  return true;
}

}  // namespace

bool is_stage(std::string_view name) noexcept {
  return std::find(kStages.begin(), kStages.end(), name) != kStages.end();
}

std::string_view to_string(StageStatus s) noexcept { return s == StageStatus::kRan ? "ok" : "up-to-date"; }

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kConfigError:
    case ErrorCode::kInvalidParams:
    case ErrorCode::kUnknownDomain:
      return 1;
    case ErrorCode::kPrerequisiteMissing:
    case ErrorCode::kLocked:
      return 2;
    case ErrorCode::kRemoteUnavailable:
    case ErrorCode::kGenerationUnavailable:
      return 4;
    default:
      return 3;
  }
}

std::string error_line(std::string_view stage, const Error& e) {
  std::string message = e.what();
  const auto prefix = std::string(to_string(e.code())) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  return json{{"status", "error"},
              {"stage", stage},
              {"class", to_string(e.code())},
              {"exit", exit_code(e.code())},
              {"message", message}}
      .dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string status_line(const StageOutcome& outcome) {
  json j{{"status", to_string(outcome.status)}, {"stage", outcome.stage}};
  if (outcome.report.contains("wall_ms")) j["wall_ms"] = outcome.report.at("wall_ms");
  return j.dump();
}

PipelineLock::PipelineLock(const fs::path& path) {
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error(ErrorCode::kIoFailure, "cannot open lock file " + path.string() + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    if (err == EWOULDBLOCK) throw Error(ErrorCode::kLocked, "another stage holds " + path.string());
    throw Error(ErrorCode::kIoFailure, "cannot lock " + path.string() + ": " + std::strerror(err));
  }
}

PipelineLock::~PipelineLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

std::vector<fs::path> stage_inputs(std::string_view stage, const PipelineConfig& config) {
  return def_of(stage).inputs(config.paths);
}

std::vector<fs::path> stage_outputs(std::string_view stage, const PipelineConfig& config) {
  return def_of(stage).outputs(config.paths);
}

std::string checkpoint_key(std::string_view stage, const PipelineConfig& config) {
  const auto& def = def_of(stage);
  json inputs = json::object();
  for (const auto& in : def.inputs(config.paths)) {
    if (!fs::is_regular_file(in)) {
      const auto producer = producer_of(in, config.paths);
      throw Error(ErrorCode::kPrerequisiteMissing,
                  "stage " + std::string(stage) + " needs " + display(in, config.paths.root) +
                      (producer.empty() ? std::string() : " (run the " + producer + " stage first)"));
    }
    inputs[display(in, config.paths.root)] = io::content_hash(in);
  }
  const json material{{"stage", stage},
                      {"version", kCheckpointVersion},
                      {"config", section_json(def, config)},
                      {"seed", config.seed},
                      {"inputs", inputs}};
  return to_hex(fnv1a64(material.dump()));
}

StageOutcome run_stage(std::string_view stage, const PipelineConfig& config, bool force) {
  const auto& def = def_of(stage);
  const auto& paths = config.paths;
  const auto key = checkpoint_key(stage, config);
  const auto outputs = def.outputs(paths);
  const auto report_path = paths.report(std::string(stage));

  StageOutcome outcome;
  outcome.stage = std::string(stage);
  if (!force && fs::exists(report_path)) {
    json previous = json::parse(io::read_file(report_path), nullptr, false);
    if (!previous.is_discarded() && previous.value("checkpoint_key", std::string{}) == key &&
        outputs_match(previous, outputs, paths.root)) {
      outcome.status = StageStatus::kUpToDate;
      outcome.report = std::move(previous);
      return outcome;
    }
  }

  fs::create_directories(paths.work);
  fs::create_directories(paths.reports);
  std::error_code ec;
  fs::remove(report_path, ec);

  spdlog::info("stage {}: running", stage);
  const auto start = std::chrono::steady_clock::now();
  json counts = def.run(config);
  const auto wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  json inputs = json::object();
  for (const auto& in : def.inputs(paths)) inputs[display(in, paths.root)] = io::content_hash(in);
  json outs = json::object();
  for (const auto& out : outputs) outs[display(out, paths.root)] = io::content_hash(out);
  const json sections = section_json(def, config);

  outcome.report = json{{"stage", stage},
                        {"status", "ok"},
                        {"checkpoint_key", key},
                        {"config_hash", to_hex(fnv1a64(sections.dump()))},
                        {"seed", config.seed},
                        {"parameters", sections},
                        {"inputs", inputs},
                        {"outputs", outs},
                        {"counts", counts},
                        {"wall_ms", wall_ms}};
  io::write_file_atomic(report_path, outcome.report.dump(2) + "\n");
  spdlog::info("stage {}: done in {} ms", stage, wall_ms);
  return outcome;
}

}  // namespace seedmine::pipeline
