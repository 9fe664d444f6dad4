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

#include <json.hpp>

#include "seedmine/pipeline/config.hpp"

// Stage bodies. Each writes its outputs atomically and returns the counts
// that go into the stage report.
namespace seedmine::pipeline::stages {

nlohmann::json ingest(const PipelineConfig& c);
nlohmann::json embed(const PipelineConfig& c);
nlohmann::json index(const PipelineConfig& c);
nlohmann::json seedgen(const PipelineConfig& c);
nlohmann::json mine(const PipelineConfig& c);
nlohmann::json train(const PipelineConfig& c);
nlohmann::json classify(const PipelineConfig& c);
nlohmann::json metrics(const PipelineConfig& c);
nlohmann::json judge(const PipelineConfig& c);
nlohmann::json mix(const PipelineConfig& c);

}  // namespace seedmine::pipeline::stages
