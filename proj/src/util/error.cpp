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


#include "seedmine/util/error.hpp"

namespace seedmine {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kEmptyText: return "EmptyText";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kRemoteUnavailable: return "RemoteUnavailable";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kCorruptIndex: return "CorruptIndex";
    case ErrorCode::kCorruptModel: return "CorruptModel";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kUnknownDomain: return "UnknownDomain";
    case ErrorCode::kGenerationUnavailable: return "GenerationUnavailable";
    case ErrorCode::kUnparseableGeneration: return "UnparseableGeneration";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kMalformedJudgement: return "MalformedJudgement";
    case ErrorCode::kInsufficientDomainTokens: return "InsufficientDomainTokens";
    case ErrorCode::kInsufficientGeneralTokens: return "InsufficientGeneralTokens";
    case ErrorCode::kToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::kMissingDocument: return "MissingDocument";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kPrerequisiteMissing: return "PrerequisiteMissing";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kLocked: return "Locked";
  }
  return "Unknown";
}

}  // namespace seedmine
