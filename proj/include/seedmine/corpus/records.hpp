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

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "seedmine/corpus/types.hpp"

namespace seedmine::corpus {

struct MalformedRecord {
  std::size_t line = 0;  // 1-based
  std::string message;
};

// Reads newline-delimited JSON objects with at least string fields `id` and
// `text` (optional `source`). Bad lines are reported through malformed()
// and skipped; blank lines are ignored. A stream-level read failure throws
// IoFailure.
class RecordReader {
 public:
  explicit RecordReader(std::istream& in) : in_(in) {}

  std::optional<Document> next();

  const std::vector<MalformedRecord>& malformed() const noexcept { return malformed_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  std::unordered_set<std::string> seen_ids_;
  std::vector<MalformedRecord> malformed_;
};

struct ParseResult {
  std::vector<Document> documents;
  std::vector<MalformedRecord> malformed;
};

ParseResult parse_records(std::istream& in);

nlohmann::json to_json(const Document& doc);
nlohmann::json to_json(const Chunk& chunk);
Chunk chunk_from_json(const nlohmann::json& j);
Document document_from_json(const nlohmann::json& j);

}  // namespace seedmine::corpus
