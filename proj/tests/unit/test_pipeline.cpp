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

#include <unistd.h>

#include <filesystem>

#include "seedmine/pipeline/config.hpp"
#include "seedmine/pipeline/fixture.hpp"
#include "seedmine/pipeline/runner.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/io.hpp"

using namespace seedmine;
using namespace seedmine::pipeline;
namespace fs = std::filesystem;
using nlohmann::json;

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

struct Workspace {
  fs::path dir;
  explicit Workspace(const std::string& name) {
    dir = fs::temp_directory_path() / ("seedmine-pipeline-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    FixtureOptions o;
    o.pure_per_domain = 40;
    o.mixed_per_pair = 10;
    o.general_docs = 40;
    o.seeds_per_domain = 20;
    o.embed_dim = 128;
    write_fixture(make_fixture(o), dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  PipelineConfig config(const std::vector<std::string>& overrides = {}) const {
    return load_config(dir / "seedmine.json", overrides);
  }
};

}  // namespace

TEST_CASE("overrides parse json values and fall back to strings") {
  json doc = json::object();
  apply_override(doc, "mine.k=25");
  apply_override(doc, "mine.t_sim=0.5");
  apply_override(doc, "mix.domain=Sports");
  apply_override(doc, "mix.allow_repetition=true");
  apply_override(doc, "seedgen.domains=[\"Law\"]");
  CHECK(doc["mine"]["k"] == 25);
  CHECK(doc["mine"]["t_sim"] == 0.5);
  CHECK(doc["mix"]["domain"] == "Sports");
  CHECK(doc["mix"]["allow_repetition"] == true);
  CHECK(doc["seedgen"]["domains"] == json::array({"Law"}));
  CHECK(code_of([&] { apply_override(doc, "no-equals-sign"); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { apply_override(doc, "=3"); }) == ErrorCode::kConfigError);
}

TEST_CASE("config decoding rejects unknown keys and bad values") {
  Workspace ws("config");
  const auto c = ws.config();
  CHECK(c.paths.root == ws.dir);
  CHECK(c.seedgen.domains.size() == 3);
  CHECK(c.embed.dim == 128);
  CHECK(ws.config({"mine.k=7"}).mine.params.k == 7);
  CHECK(load_config(ws.dir / "seedmine.json", {}, 99).seed == 99);
  CHECK(code_of([&] { ws.config({"mine.kk=7"}); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { ws.config({"bogus.x=1"}); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { ws.config({"mine.t_sim=2"}); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { ws.config({"mine.k=\"many\""}); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { ws.config({"seedgen.domains=[\"Mars\"]"}); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { load_config(ws.dir / "missing.json"); }) == ErrorCode::kConfigError);
  io::write_file_atomic(ws.dir / "broken.json", "{not json");
  CHECK(code_of([&] { load_config(ws.dir / "broken.json"); }) == ErrorCode::kConfigError);
}

TEST_CASE("exit codes and output lines") {
  CHECK(exit_code(ErrorCode::kConfigError) == 1);
  CHECK(exit_code(ErrorCode::kInvalidParams) == 1);
  CHECK(exit_code(ErrorCode::kUnknownDomain) == 1);
  CHECK(exit_code(ErrorCode::kPrerequisiteMissing) == 2);
  CHECK(exit_code(ErrorCode::kLocked) == 2);
  CHECK(exit_code(ErrorCode::kRemoteUnavailable) == 4);
  CHECK(exit_code(ErrorCode::kGenerationUnavailable) == 4);
  CHECK(exit_code(ErrorCode::kCorruptIndex) == 3);
  const auto line = json::parse(error_line("mine", Error(ErrorCode::kLocked, "busy")));
  CHECK(line.at("status") == "error");
  CHECK(line.at("stage") == "mine");
  CHECK(line.at("class") == "Locked");
  CHECK(line.at("exit") == 2);
  CHECK(line.at("message") == "busy");
  CHECK(is_stage("judge"));
  CHECK_FALSE(is_stage("deploy"));
}

TEST_CASE("missing prerequisites name the file and the producing stage") {
  Workspace ws("prereq");
  const auto c = ws.config();
  try {
    run_stage("mine", c);
    FAIL("expected PrerequisiteMissing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPrerequisiteMissing);
    const std::string msg = e.what();
    CHECK(msg.find("work/index.hnsw") != std::string::npos);
    CHECK(msg.find("index stage") != std::string::npos);
  }
  CHECK_FALSE(fs::exists(c.paths.report("mine")));
}

TEST_CASE("stages checkpoint, resume and rerun only what changed") {
  Workspace ws("resume");
  auto c = ws.config();
  for (auto s : kStages) CHECK(run_stage(s, c).status == StageStatus::kRan);
  for (auto s : kStages) CHECK(run_stage(s, c).status == StageStatus::kUpToDate);

  const auto report = json::parse(io::read_file(c.paths.report("mine")));
  for (const char* key : {"stage", "status", "checkpoint_key", "config_hash", "seed", "parameters", "inputs", "outputs",
                          "counts", "wall_ms"}) {
    CHECK(report.contains(key));
  }

  const auto labeled = io::read_file(c.paths.labeled());
  fs::remove(c.paths.labeled());
  CHECK(run_stage("index", c).status == StageStatus::kUpToDate);
  CHECK(run_stage("mine", c).status == StageStatus::kRan);
  CHECK(io::read_file(c.paths.labeled()) == labeled);
  CHECK(run_stage("train", c).status == StageStatus::kUpToDate);

  // A tampered output invalidates its stage.
  io::write_file_atomic(c.paths.mix(), "tampered\n");
  CHECK(run_stage("mix", c).status == StageStatus::kRan);

  // A config change touching one section reruns that stage; its unchanged
  // output keeps downstream stages current.
  c = ws.config({"metrics.max_real_docs=100"});
  CHECK(run_stage("metrics", c).status == StageStatus::kRan);
  CHECK(run_stage("judge", c).status == StageStatus::kUpToDate);
  CHECK(run_stage("judge", c, true).status == StageStatus::kRan);

  c = ws.config({"mine.t_sim=0.99"});
  CHECK(checkpoint_key("mine", c) != report.at("checkpoint_key"));
  CHECK(checkpoint_key("index", c) == checkpoint_key("index", ws.config()));
}

TEST_CASE("a failing stage leaves no outputs and no report") {
  Workspace ws("failure");
  const auto c = ws.config();
  for (auto s : {"ingest", "embed", "index", "seedgen", "mine"}) run_stage(s, c);
  const auto strict = ws.config({"train.min_per_label=100000"});
  CHECK(code_of([&] { run_stage("train", strict); }) == ErrorCode::kInsufficientData);
  CHECK_FALSE(fs::exists(c.paths.model()));
  CHECK_FALSE(fs::exists(c.paths.test_eval()));
  CHECK_FALSE(fs::exists(c.paths.report("train")));
  for (const auto& e : fs::directory_iterator(c.paths.work)) CHECK(e.path().filename().string().find(".tmp") == std::string::npos);

  const auto remote = ws.config({"seedgen.backend=remote", "seedgen.url=http://127.0.0.1:1/gen",
                                 "seedgen.max_retries=0"});
  fs::remove(c.paths.seeds());
  CHECK(code_of([&] { run_stage("seedgen", remote); }) == ErrorCode::kGenerationUnavailable);
  CHECK_FALSE(fs::exists(c.paths.seeds()));
}

TEST_CASE("the pipeline lock is exclusive") {
  Workspace ws("lock");
  const auto path = ws.config().paths.lock();
  {
    PipelineLock held(path);
    CHECK(code_of([&] { PipelineLock second(path); }) == ErrorCode::kLocked);
  }
  CHECK_NOTHROW(PipelineLock again(path));
}

TEST_CASE("fixture truth scoring") {
  const auto f = make_fixture({.pure_per_domain = 5, .mixed_per_pair = 2, .general_docs = 3, .noise = false});
  const auto truth = f.truth();
  std::vector<miner::LabeledRecord> perfect;
  for (const auto& [id, labels] : truth) perfect.push_back({id + "#0", "", labels, {}});
  const auto acc = score_against_truth(perfect, truth);
  CHECK(acc.precision == 1.0);
  CHECK(acc.recall == 1.0);
  const auto none = score_against_truth({}, truth);
  CHECK(none.precision == 1.0);
  CHECK(none.recall == 0.0);
}
