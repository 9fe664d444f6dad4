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


#include "seedmine/corpus/filter.hpp"

#include <array>
#include <string_view>

#include "seedmine/util/error.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::corpus {
namespace {

constexpr std::string_view kEllipsis = "\xE2\x80\xA6";  // U+2026

constexpr std::array<std::string_view, 7> kBullets = {
    "\xE2\x80\xA2",  // U+2022 bullet
    "\xE2\x97\x8F",  // U+25CF black circle
    "\xE2\x80\xA3",  // U+2023 triangular bullet
    "\xE2\x97\xA6",  // U+25E6 white bullet
    "\xE2\x96\xAA",  // U+25AA small square
    "-",
    "*",
};

bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

std::size_t count_code_points(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += is_continuation(c) ? 0 : 1;
  return n;
}

// Decodes the code point starting at s[i]; returns its byte length.
std::size_t decode(std::string_view s, std::size_t i, char32_t& cp) {
  const auto c = static_cast<unsigned char>(s[i]);
  std::size_t len = 1;
  if (c < 0x80) {
    cp = c;
    return 1;
  }
  if ((c & 0xE0) == 0xC0) {
    cp = c & 0x1F;
    len = 2;
  } else if ((c & 0xF0) == 0xE0) {
    cp = c & 0x0F;
    len = 3;
  } else if ((c & 0xF8) == 0xF0) {
    cp = c & 0x07;
    len = 4;
  } else {
    cp = 0xFFFD;
    return 1;
  }
  for (std::size_t k = 1; k < len; ++k) {
    if (i + k >= s.size() || !is_continuation(static_cast<unsigned char>(s[i + k]))) {
      cp = 0xFFFD;
      return k;
    }
    cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
  }
  return len;
}

// Letters in any script count; ASCII punctuation/digits, Latin-1 symbols and
// the general-punctuation / symbol blocks do not.
bool is_alphabetic(char32_t cp) {
  if (cp < 0x80) return text::is_alpha(static_cast<char>(cp));
  if (cp >= 0xA0 && cp <= 0xBF) return false;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp == 0xFFFD) return false;
  return true;
}

bool has_alphabetic(std::string_view word) {
  for (std::size_t i = 0; i < word.size();) {
    char32_t cp = 0;
    i += decode(word, i, cp);
    if (is_alphabetic(cp)) return true;
  }
  return false;
}

std::size_t count_occurrences(std::string_view hay, std::string_view needle) {
  std::size_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string_view::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

bool ends_with_ellipsis(std::string_view line) {
  return line.ends_with("...") || line.ends_with(kEllipsis);
}

bool starts_with_bullet(std::string_view line) {
  for (auto b : kBullets) {
    if (line.starts_with(b)) return true;
  }
  return false;
}

}  // namespace

void FilterRules::validate() const {
  if (min_tokens < 1) throw Error(ErrorCode::kConfigError, "filter.min_tokens must be >= 1");
  if (max_words < min_tokens) throw Error(ErrorCode::kConfigError, "filter.max_words < min_tokens");
  if (min_mean_word_length > max_mean_word_length) {
    throw Error(ErrorCode::kConfigError, "filter mean word length range is empty");
  }
}

void from_json(const nlohmann::json& j, FilterRules& r) {
  r.min_tokens = j.value("min_tokens", r.min_tokens);
  r.max_words = j.value("max_words", r.max_words);
  r.min_mean_word_length = j.value("min_mean_word_length", r.min_mean_word_length);
  r.max_mean_word_length = j.value("max_mean_word_length", r.max_mean_word_length);
  r.max_symbol_ratio = j.value("max_symbol_ratio", r.max_symbol_ratio);
  r.min_alpha_word_ratio = j.value("min_alpha_word_ratio", r.min_alpha_word_ratio);
  r.max_bullet_line_ratio = j.value("max_bullet_line_ratio", r.max_bullet_line_ratio);
  r.max_ellipsis_line_ratio = j.value("max_ellipsis_line_ratio", r.max_ellipsis_line_ratio);
}

void to_json(nlohmann::json& j, const FilterRules& r) {
  j = nlohmann::json{{"min_tokens", r.min_tokens},
                     {"max_words", r.max_words},
                     {"min_mean_word_length", r.min_mean_word_length},
                     {"max_mean_word_length", r.max_mean_word_length},
                     {"max_symbol_ratio", r.max_symbol_ratio},
                     {"min_alpha_word_ratio", r.min_alpha_word_ratio},
                     {"max_bullet_line_ratio", r.max_bullet_line_ratio},
                     {"max_ellipsis_line_ratio", r.max_ellipsis_line_ratio}};
}

FilterVerdict quality_filter(const Document& doc, const FilterRules& rules) {
  if (doc.token_count < rules.min_tokens) return FilterVerdict::reject(RejectReason::kMinTokens);
  if (doc.word_count > rules.max_words) return FilterVerdict::reject(RejectReason::kWordCountRange);

  const auto words = text::split_whitespace(doc.text);
  const auto n_words = static_cast<double>(words.size());

  std::size_t chars = 0;
  std::size_t alpha_words = 0;
  for (auto w : words) {
    chars += count_code_points(w);
    if (has_alphabetic(w)) ++alpha_words;
  }
  const double mean_len = static_cast<double>(chars) / n_words;
  if (mean_len < rules.min_mean_word_length || mean_len > rules.max_mean_word_length) {
    return FilterVerdict::reject(RejectReason::kMeanWordLength);
  }
  if (static_cast<double>(alpha_words) / n_words < rules.min_alpha_word_ratio) {
    return FilterVerdict::reject(RejectReason::kAlphaWordRatio);
  }

  const double hash_ratio = static_cast<double>(count_occurrences(doc.text, "#")) / n_words;
  const double ellipsis_ratio =
      static_cast<double>(count_occurrences(doc.text, "...") + count_occurrences(doc.text, kEllipsis)) /
      n_words;
  if (hash_ratio > rules.max_symbol_ratio || ellipsis_ratio > rules.max_symbol_ratio) {
    return FilterVerdict::reject(RejectReason::kSymbolRatio);
  }

  std::size_t lines = 0;
  std::size_t bullet_lines = 0;
  std::size_t ellipsis_lines = 0;
  for (auto raw : text::split_lines(doc.text)) {
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    ++lines;
    if (starts_with_bullet(line)) ++bullet_lines;
    if (ends_with_ellipsis(line)) ++ellipsis_lines;
  }
  if (lines > 0) {
    const auto n_lines = static_cast<double>(lines);
    if (static_cast<double>(bullet_lines) / n_lines > rules.max_bullet_line_ratio) {
      return FilterVerdict::reject(RejectReason::kBulletRatio);
    }
    if (static_cast<double>(ellipsis_lines) / n_lines > rules.max_ellipsis_line_ratio) {
      return FilterVerdict::reject(RejectReason::kEllipsisRatio);
    }
  }
  return FilterVerdict::keep();
}

}  // namespace seedmine::corpus
