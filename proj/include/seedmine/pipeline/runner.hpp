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


#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seedmine/pipeline/config.hpp"
#include "seedmine/util/error.hpp"

namespace seedmine::pipeline {

// In pipeline order.
inline constexpr std::array<std::string_view, 10> kStages = {"ingest", "embed",   "index",   "seedgen", "mine",
                                                             "train",  "classify", "metrics", "judge",   "mix"};

bool is_stage(std::string_view name) noexcept;

enum class StageStatus { kRan, kUpToDate };
std::string_view to_string(StageStatus s) noexcept;

struct StageOutcome {
  std::string stage;
  StageStatus status = StageStatus::kRan;
  nlohmann::json report;  // contents of reports/<stage>.json
};

// Exit status for a failure: 1 usage/config, 2 prerequisite or lock,
// 3 data, 4 backend unavailable.
int exit_code(ErrorCode code) noexcept;

// {"status":"error","stage":...,"class":...,"exit":...,"message":...} on one line.
std::string error_line(std::string_view stage, const Error& e);
// {"status":"ok"|"up-to-date","stage":...,"wall_ms":...} on one line.
std::string status_line(const StageOutcome& outcome);

// Exclusive advisory lock on the pipeline directory. Throws Locked when
// another process holds it.
class PipelineLock {
 public:
  explicit PipelineLock(const std::filesystem::path& path);
  ~PipelineLock();
  PipelineLock(const PipelineLock&) = delete;
  PipelineLock& operator=(const PipelineLock&) = delete;

 private:
  int fd_ = -1;
};

// Input and output files of a stage under `config`.
std::vector<std::filesystem::path> stage_inputs(std::string_view stage, const PipelineConfig& config);
std::vector<std::filesystem::path> stage_outputs(std::string_view stage, const PipelineConfig& config);

// Hash of the stage name, its config sections, the seed and the content of
// its inputs. Throws PrerequisiteMissing naming the first absent input.
std::string checkpoint_key(std::string_view stage, const PipelineConfig& config);

// Runs one stage unless its report carries the current checkpoint key and
// every output still has the recorded content hash. Outputs and the report
// are written atomically. The caller holds the lock.
StageOutcome run_stage(std::string_view stage, const PipelineConfig& config, bool force = false);

}  // namespace seedmine::pipeline
