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
#include <optional>
#include <string>
#include <string_view>

namespace seedmine::corpus {

struct Document {
  std::string id;
  std::string text;
  std::string source;
  std::size_t word_count = 0;   // whitespace tokens
  std::size_t token_count = 0;  // same tokenizer as word_count

  // Builds a document and fills both counts from `text`.
  static Document make(std::string id, std::string text, std::string source = {});
  void recount();
};

struct Chunk {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;
  std::size_t word_count = 0;
  // Piece of one sentence that alone exceeded the word budget.
  bool oversize = false;

  // "<doc_id>#<index>", the identity used by the index and miner.
  std::string id() const;
};

enum class RejectReason {
  kMinTokens,
  kWordCountRange,
  kMeanWordLength,
  kSymbolRatio,
  kAlphaWordRatio,
  kBulletRatio,
  kEllipsisRatio,
  kDuplicateExact,
  kDuplicateSubdoc,
};

std::string_view to_string(RejectReason reason) noexcept;

struct FilterVerdict {
  bool kept = true;
  std::optional<RejectReason> reason;  // set iff !kept

  static FilterVerdict keep() { return {}; }
  static FilterVerdict reject(RejectReason r) { return {false, r}; }
  friend bool operator==(const FilterVerdict&, const FilterVerdict&) = default;
};

}  // namespace seedmine::corpus
