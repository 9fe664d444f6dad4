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


#include "seedmine/seedgen/dimensions.hpp"

#include <algorithm>

#include "seedmine/util/error.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::seedgen {
namespace {

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

}  // namespace

std::string_view to_string(Length length) noexcept {
  switch (length) {
    case Length::kVeryLong: return "very long";
    case Length::kLong: return "long";
    case Length::kShort: return "short";
  }
  return "short";
}

std::optional<Length> parse_length(std::string_view s) noexcept {
  for (Length l : kLengths) {
    if (text::iequals(s, to_string(l))) return l;
  }
  return std::nullopt;
}

std::string_view length_phrase(Length length) noexcept {
  switch (length) {
    case Length::kVeryLong: return "very long (more than 1500 words)";
    case Length::kLong: return "long (more than 500 words)";
    case Length::kShort: return "short (less than 500 words)";
  }
  return "short (less than 500 words)";
}

bool is_doc_type(std::string_view s) noexcept { return contains(kDocTypes, s); }
bool is_industry(std::string_view s) noexcept { return contains(kIndustries, s); }
bool is_demeanor(std::string_view s) noexcept { return contains(kDemeanors, s); }

void require_industry(std::string_view s) {
  if (!is_industry(s)) throw Error(ErrorCode::kUnknownDomain, "not an industry: " + std::string(s));
}

std::string_view prompt_name(std::string_view industry) noexcept {
  if (industry == "Financial Services") return "Financial Services and Insurance";
  if (industry == "Travel & Hospitality") return "Travel/Hospitality";
  return industry;
}

std::string judge_name(std::string_view industry) {
  if (industry == "Financial Services") return "Finance_Insurance";
  std::string out;
  for (auto word : text::split_whitespace(industry)) {
    if (word == "&") continue;
    if (!out.empty()) out += '_';
    out += word;
  }
  return out;
}

std::optional<std::string> industry_from_judge_name(std::string_view name) {
  for (auto ind : kIndustries) {
    if (text::iequals(judge_name(ind), text::trim(name))) return std::string(ind);
  }
  return std::nullopt;
}

std::string slug(std::string_view industry) {
  std::string out;
  for (auto word : text::split_whitespace(industry)) {
    if (word == "&") continue;
    if (!out.empty()) out += '-';
    out += text::lowercase(word);
  }
  return out;
}

}  // namespace seedmine::seedgen
