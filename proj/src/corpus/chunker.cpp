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


#include "seedmine/corpus/chunker.hpp"

#include <algorithm>
#include <array>

#include "seedmine/corpus/dedup.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::corpus {
namespace {

constexpr std::array<std::string_view, 40> kAbbreviations = {
    "mr.",   "mrs.", "ms.",   "dr.",  "prof.", "sr.",   "jr.",  "st.",   "vs.",  "e.g.",
    "i.e.",  "inc.", "ltd.",  "co.",  "corp.", "no.",   "fig.", "u.s.",  "u.k.", "approx.",
    "dept.", "mt.",  "gen.",  "gov.", "sen.",  "rep.",  "capt.", "lt.",  "col.", "sgt.",
    "al.",   "vol.", "pp.",   "jan.", "feb.",  "aug.",  "sept.", "oct.", "nov.", "dec.",
};

constexpr std::array<std::string_view, 4> kOpeningMultibyte = {
    "\xE2\x80\x9C", "\xE2\x80\x98", "\xC2\xBF", "\xC2\xA1"};  // “ ‘ ¿ ¡
constexpr std::array<std::string_view, 2> kClosingMultibyte = {"\xE2\x80\x9D", "\xE2\x80\x99"};  // ” ’

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_closing_ascii(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }
bool is_opening_ascii(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

bool starts_sentence(std::string_view rest) {
  if (rest.empty()) return false;
  if (text::is_upper(rest[0]) || is_opening_ascii(rest[0])) return true;
  return std::any_of(kOpeningMultibyte.begin(), kOpeningMultibyte.end(),
                     [&](auto m) { return rest.starts_with(m); });
}

// The whitespace-delimited token that ends at `dot` (inclusive), lowercased,
// with leading opening punctuation removed.
std::string token_ending_at(std::string_view s, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !text::is_space(s[b - 1])) --b;
  std::string tok = text::lowercase(s.substr(b, dot - b + 1));
  while (!tok.empty() && (is_opening_ascii(tok.front()))) tok.erase(tok.begin());
  return tok;
}

bool is_abbreviation(std::string_view s, std::size_t dot) {
  const std::string tok = token_ending_at(s, dot);
  if (tok.size() == 2 && text::is_alpha(tok[0])) return true;  // initial: "J."
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), tok) != kAbbreviations.end();
}

void split_paragraph(std::string_view p, std::vector<std::string>& out) {
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < p.size()) {
    if (!is_terminal(p[i])) {
      ++i;
      continue;
    }
    const std::size_t mark = i;
    std::size_t j = i + 1;
    while (j < p.size()) {
      if (is_terminal(p[j]) || is_closing_ascii(p[j])) {
        ++j;
        continue;
      }
      auto closing = std::find_if(kClosingMultibyte.begin(), kClosingMultibyte.end(),
                                  [&](auto m) { return p.substr(j).starts_with(m); });
      if (closing == kClosingMultibyte.end()) break;
      j += closing->size();
    }
    if (j >= p.size() || !text::is_space(p[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < p.size() && text::is_space(p[k])) ++k;
    if (!starts_sentence(p.substr(k)) || (p[mark] == '.' && is_abbreviation(p, mark))) {
      i = k;
      continue;
    }
    auto sentence = text::collapse_whitespace(p.substr(start, j - start));
    if (!sentence.empty()) out.push_back(std::move(sentence));
    start = k;
    i = k;
  }
  auto tail = text::collapse_whitespace(p.substr(start));
  if (!tail.empty()) out.push_back(std::move(tail));
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  for (auto para : split_paragraphs(text)) split_paragraph(para, out);
  return out;
}

std::vector<Chunk> chunk_sentences(const std::string& doc_id, const std::vector<std::string>& sentences,
                                   std::size_t max_words) {
  if (max_words < 1) throw Error(ErrorCode::kInvalidParams, "max_words must be >= 1");
  std::vector<Chunk> chunks;
  std::vector<std::string> pending;
  std::size_t pending_words = 0;

  auto emit = [&](std::string text, std::size_t words, bool oversize) {
    Chunk c;
    c.doc_id = doc_id;
    c.index = chunks.size();
    c.text = std::move(text);
    c.word_count = words;
    c.oversize = oversize;
    chunks.push_back(std::move(c));
  };
  auto flush = [&] {
    if (pending.empty()) return;
    emit(text::join(pending, " "), pending_words, false);
    pending.clear();
    pending_words = 0;
  };

  for (const auto& s : sentences) {
    const std::size_t n = text::count_whitespace_tokens(s);
    if (n == 0) continue;
    if (n > max_words) {
      flush();
      const auto words = text::split_whitespace(s);
      for (std::size_t b = 0; b < words.size(); b += max_words) {
        const std::size_t e = std::min(words.size(), b + max_words);
        std::vector<std::string> piece(words.begin() + static_cast<std::ptrdiff_t>(b),
                                       words.begin() + static_cast<std::ptrdiff_t>(e));
        emit(text::join(piece, " "), e - b, true);
      }
      continue;
    }
    if (pending_words + n > max_words) flush();
    pending.push_back(s);
    pending_words += n;
  }
  flush();
  return chunks;
}

std::vector<Chunk> chunk_document(const Document& doc, std::size_t max_words) {
  return chunk_sentences(doc.id, split_sentences(doc.text), max_words);
}

}  // namespace seedmine::corpus
