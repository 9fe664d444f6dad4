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

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "seedmine/corpus/types.hpp"

namespace seedmine::corpus {

// Fingerprint of the normalized text (trimmed, whitespace runs collapsed,
// ASCII-lowercased). The stored text is never modified.
std::uint64_t normalized_hash(std::string_view text);

// Streaming exact dedup: admit() returns true for the first document with a
// given normalized fingerprint and false for every later one.
class ExactDeduplicator {
 public:
  bool admit(const Document& doc);
  std::size_t distinct() const noexcept { return seen_.size(); }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

std::vector<Document> dedup_exact(std::vector<Document> docs);

// Paragraph-level dedup in two passes over the same ordered stream:
//   1. count() every document (corpus-wide paragraph frequencies),
//   2. apply() every document in the same order.
// A paragraph whose frequency reaches the threshold is kept only in the
// first document that contains it; documents emptied by removal yield
// nullopt. Documents with nothing removed come back byte-identical.
class SubdocDeduplicator {
 public:
  explicit SubdocDeduplicator(std::size_t frequency_threshold);

  void count(const Document& doc);
  std::optional<Document> apply(const Document& doc);

  std::size_t frequency(std::string_view paragraph) const;

 private:
  std::size_t threshold_;
  std::unordered_map<std::uint64_t, std::size_t> counts_;
  std::unordered_map<std::uint64_t, std::size_t> owner_;  // ordinal of first containing doc
  std::size_t apply_calls_ = 0;
};

// Blank-line-delimited spans, trimmed, empty spans dropped.
std::vector<std::string_view> split_paragraphs(std::string_view text);

std::vector<Document> dedup_subdoc(const std::vector<Document>& docs, std::size_t frequency_threshold);

}  // namespace seedmine::corpus
