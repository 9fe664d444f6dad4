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


#include "seedmine/corpus/records.hpp"

#include <string>

#include "seedmine/util/error.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::corpus {

using nlohmann::json;

Document Document::make(std::string id, std::string text, std::string source) {
  Document d{std::move(id), std::move(text), std::move(source)};
  d.recount();
  return d;
}

void Document::recount() {
  word_count = text::count_whitespace_tokens(text);
  token_count = word_count;
}

std::string Chunk::id() const { return doc_id + "#" + std::to_string(index); }

std::string_view to_string(RejectReason reason) noexcept {
  switch (reason) {
    case RejectReason::kMinTokens: return "min_tokens";
    case RejectReason::kWordCountRange: return "word_count_range";
    case RejectReason::kMeanWordLength: return "mean_word_length";
    case RejectReason::kSymbolRatio: return "symbol_ratio";
    case RejectReason::kAlphaWordRatio: return "alpha_word_ratio";
    case RejectReason::kBulletRatio: return "bullet_ratio";
    case RejectReason::kEllipsisRatio: return "ellipsis_ratio";
    case RejectReason::kDuplicateExact: return "duplicate_exact";
    case RejectReason::kDuplicateSubdoc: return "duplicate_subdoc";
  }
  return "unknown";
}

std::optional<Document> RecordReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;

    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      malformed_.push_back({line_no_, "not a JSON object"});
      continue;
    }
    auto id = j.find("id");
    auto txt = j.find("text");
    if (id == j.end() || !id->is_string()) {
      malformed_.push_back({line_no_, "missing string field 'id'"});
      continue;
    }
    if (txt == j.end() || !txt->is_string()) {
      malformed_.push_back({line_no_, "missing string field 'text'"});
      continue;
    }
    std::string source;
    if (auto src = j.find("source"); src != j.end() && src->is_string()) source = src->get<std::string>();

    auto doc_id = id->get<std::string>();
    if (!seen_ids_.insert(doc_id).second) {
      malformed_.push_back({line_no_, "duplicate id '" + doc_id + "'"});
      continue;
    }
    return Document::make(std::move(doc_id), txt->get<std::string>(), std::move(source));
  }
  if (in_.bad()) throw Error(ErrorCode::kIoFailure, "record stream read failed");
  return std::nullopt;
}

ParseResult parse_records(std::istream& in) {
  RecordReader reader(in);
  ParseResult out;
  while (auto doc = reader.next()) out.documents.push_back(std::move(*doc));
  out.malformed = reader.malformed();
  return out;
}

json to_json(const Document& doc) {
  json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  if (!doc.source.empty()) j["source"] = doc.source;
  j["word_count"] = doc.word_count;
  j["token_count"] = doc.token_count;
  return j;
}

json to_json(const Chunk& chunk) {
  json j;
  j["doc_id"] = chunk.doc_id;
  j["index"] = chunk.index;
  j["text"] = chunk.text;
  j["oversize"] = chunk.oversize;
  j["word_count"] = chunk.word_count;
  return j;
}

Chunk chunk_from_json(const json& j) {
  Chunk c;
  c.doc_id = j.at("doc_id").get<std::string>();
  c.index = j.at("index").get<std::size_t>();
  c.text = j.at("text").get<std::string>();
  c.oversize = j.value("oversize", false);
  c.word_count = j.contains("word_count") ? j.at("word_count").get<std::size_t>()
                                          : text::count_whitespace_tokens(c.text);
  return c;
}

Document document_from_json(const json& j) {
  return Document::make(j.at("id").get<std::string>(), j.at("text").get<std::string>(),
                        j.value("source", std::string{}));
}

}  // namespace seedmine::corpus
