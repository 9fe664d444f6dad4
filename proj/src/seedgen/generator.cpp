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


#include "seedmine/seedgen/generator.hpp"

#include "seedmine/seedgen/dimensions.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/rng.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::seedgen {
std::string vocabulary_text(Rng& rng, const std::vector<const std::vector<std::string>*>& vocabs,
                            std::size_t words) {
  constexpr std::size_t kSentence = 12;
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    const auto& v = *vocabs[i % vocabs.size()];
    std::string w = v[static_cast<std::size_t>(rng.uniform_index(v.size()))];
    if (i % kSentence == 0) {
      if (!out.empty()) out += ". ";
      if (!w.empty() && text::is_lower(w[0])) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    } else {
      out += ' ';
    }
    out += w;
  }
  return words > 0 ? out + "." : out;
}

CannedGenerator::CannedGenerator(std::vector<std::string> completions, Mode mode)
    : completions_(std::move(completions)), mode_(mode) {
  if (completions_.empty()) throw Error(ErrorCode::kInvalidParams, "canned generator needs completions");
}

std::string CannedGenerator::complete(const GenerationRequest& request) const {
  const std::size_t i = mode_ == Mode::kRoundRobin ? next_++ : static_cast<std::size_t>(fnv1a64(request.prompt));
  return completions_[i % completions_.size()];
}

VocabularyGenerator::VocabularyGenerator(std::map<std::string, std::vector<std::string>> vocabularies,
                                         std::size_t document_words)
    : vocabularies_(std::move(vocabularies)), document_words_(document_words) {
  if (vocabularies_.empty() || document_words_ == 0) {
    throw Error(ErrorCode::kInvalidParams, "vocabulary generator needs vocabularies and a document length");
  }
  for (const auto& [name, words] : vocabularies_) {
    if (words.empty()) throw Error(ErrorCode::kInvalidParams, "empty vocabulary for " + name);
  }
}

std::string VocabularyGenerator::complete(const GenerationRequest& request) const {
  const auto lines = text::split_lines(request.prompt);
  const std::string_view first = lines.empty() ? std::string_view{} : lines.front();
  std::vector<const std::vector<std::string>*> vocabs;
  std::string names;
  for (const auto& [industry, words] : vocabularies_) {
    if (first.find(prompt_name(industry)) == std::string_view::npos) continue;
    vocabs.push_back(&words);
    if (!names.empty()) names += " and ";
    names += industry;
  }
  if (vocabs.empty()) return "I cannot help with that request.";

  Rng rng(fnv1a64(request.prompt));
  std::string out;
  out += "- TOPIC: " + vocabulary_text(rng, vocabs, 6) + "\n";
  out += "- PREMISE: A document about " + names + ".\n";
  out += "- AUTHOR: A practitioner in " + names + ".\n";
  out += "- AUDIENCE: Readers working in " + names + ".\n";
  out += "- MOTIVE: To inform peers.\n";
  out += "- DOCUMENT: " + vocabulary_text(rng, vocabs, document_words_) + "\n";
  return out;
}

RemoteGenerator::RemoteGenerator(RemoteGeneratorOptions options)
    : options_(std::move(options)), endpoint_(http::Endpoint::parse(options_.url)) {}

std::string RemoteGenerator::complete(const GenerationRequest& request) const {
  const nlohmann::json body{
      {"prompt", request.prompt}, {"max_tokens", request.max_tokens}, {"temperature", request.temperature}};
  std::vector<std::pair<std::string, std::string>> headers;
  if (!options_.bearer_token.empty()) headers.emplace_back("Authorization", "Bearer " + options_.bearer_token);
  nlohmann::json reply;
  try {
    reply = http::post_json(endpoint_, body, options_.retry, headers);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kRemoteUnavailable) throw Error(ErrorCode::kGenerationUnavailable, e.what());
    throw;
  }
  const auto it = reply.find("text");
  if (it == reply.end() || !it->is_string()) {
    throw Error(ErrorCode::kGenerationUnavailable, "generator reply has no text field");
  }
  return it->get<std::string>();
}

}  // namespace seedmine::seedgen
