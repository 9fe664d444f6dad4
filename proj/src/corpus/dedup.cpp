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


#include "seedmine/corpus/dedup.hpp"

#include <string>

#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::corpus {

std::uint64_t normalized_hash(std::string_view text) {
  return fnv1a64(text::normalize_for_hash(text));
}

bool ExactDeduplicator::admit(const Document& doc) {
  return seen_.insert(normalized_hash(doc.text)).second;
}

std::vector<Document> dedup_exact(std::vector<Document> docs) {
  ExactDeduplicator dedup;
  std::vector<Document> out;
  for (auto& d : docs) {
    if (dedup.admit(d)) out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::string_view> split_paragraphs(std::string_view text) {
  std::vector<std::string_view> out;
  const auto lines = text::split_lines(text);
  // Paragraph = maximal run of non-blank lines; take the span of the source
  // text from its first line to the end of its last line.
  const char* begin = nullptr;
  const char* end = nullptr;
  auto flush = [&] {
    if (begin != nullptr) {
      auto para = text::trim(std::string_view(begin, static_cast<std::size_t>(end - begin)));
      if (!para.empty()) out.push_back(para);
    }
    begin = end = nullptr;
  };
  for (auto line : lines) {
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (begin == nullptr) begin = line.data();
    end = line.data() + line.size();
  }
  flush();
  return out;
}

SubdocDeduplicator::SubdocDeduplicator(std::size_t frequency_threshold)
    : threshold_(frequency_threshold) {
  if (threshold_ < 2) throw Error(ErrorCode::kInvalidParams, "subdoc frequency_threshold must be >= 2");
}

void SubdocDeduplicator::count(const Document& doc) {
  for (auto p : split_paragraphs(doc.text)) ++counts_[normalized_hash(p)];
}

std::size_t SubdocDeduplicator::frequency(std::string_view paragraph) const {
  auto it = counts_.find(normalized_hash(paragraph));
  return it == counts_.end() ? 0 : it->second;
}

std::optional<Document> SubdocDeduplicator::apply(const Document& doc) {
  const std::size_t ordinal = apply_calls_++;
  const auto paragraphs = split_paragraphs(doc.text);
  std::vector<std::string> kept;
  bool removed = false;
  for (auto p : paragraphs) {
    const auto h = normalized_hash(p);
    auto c = counts_.find(h);
    if (c != counts_.end() && c->second >= threshold_) {
      auto [owner, inserted] = owner_.emplace(h, ordinal);
      if (!inserted && owner->second != ordinal) {
        removed = true;
        continue;
      }
    }
    kept.emplace_back(p);
  }
  if (!removed) return doc;
  if (kept.empty()) return std::nullopt;
  Document out = doc;
  out.text = text::join(kept, "\n\n");
  out.recount();
  return out;
}

std::vector<Document> dedup_subdoc(const std::vector<Document>& docs, std::size_t frequency_threshold) {
  SubdocDeduplicator dedup(frequency_threshold);
  for (const auto& d : docs) dedup.count(d);
  std::vector<Document> out;
  for (const auto& d : docs) {
    if (auto kept = dedup.apply(d)) out.push_back(std::move(*kept));
  }
  return out;
}

}  // namespace seedmine::corpus
