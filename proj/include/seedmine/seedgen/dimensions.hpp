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

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace seedmine::seedgen {

inline constexpr std::array<std::string_view, 17> kDocTypes = {
    "Report",         "Blog post",        "News article",   "List of tweets", "Press release",  "Email",
    "Technical report", "Textbook chapter", "Research paper", "Short story",    "Advertisement",
    "Product proposal", "Research proposal", "Status update", "Legal brief",    "Contract",       "Memo",
};

inline constexpr std::array<std::string_view, 21> kIndustries = {
    "Media & Entertainment",
    "Financial Services",
    "Sports",
    "Public Sector",
    "Education",
    "Gaming",
    "Retail",
    "Software & Internet",
    "Travel & Hospitality",
    "Agriculture",
    "Utilities",
    "Healthcare & Life Sciences",
    "Real Estate & Construction",
    "Manufacturing",
    "Telecommunications",
    "Automotive",
    "Services",
    "Consumer goods",
    "Transportation & Logistics",
    "Law",
    "Energy",
};

inline constexpr std::array<std::string_view, 11> kDemeanors = {
    "Professional", "Angry",     "Bored",    "Informal", "Sad", "Excited",
    "Confident",    "Exacting",  "Poetic",   "Pedantic", "Attentive to detail",
};

enum class Length { kVeryLong, kLong, kShort };
inline constexpr std::array<Length, 3> kLengths = {Length::kVeryLong, Length::kLong, Length::kShort};

// "very long", "long", "short".
std::string_view to_string(Length length) noexcept;
std::optional<Length> parse_length(std::string_view s) noexcept;
// The wording placed in the prompt, e.g. "short (less than 500 words)".
std::string_view length_phrase(Length length) noexcept;

bool is_doc_type(std::string_view s) noexcept;
bool is_industry(std::string_view s) noexcept;
bool is_demeanor(std::string_view s) noexcept;

// Throws UnknownDomain for names outside the industry list.
void require_industry(std::string_view s);

// How an industry is named inside generation prompts. A few canonical names
// are spelled differently in the observed prompts ("Financial Services and
// Insurance", "Travel/Hospitality"); the rest are used as-is.
std::string_view prompt_name(std::string_view industry) noexcept;

// Short identifier used in judge prompts, e.g. "Finance_Insurance",
// "Travel_Hospitality".
std::string judge_name(std::string_view industry);
std::optional<std::string> industry_from_judge_name(std::string_view name);

// Lowercase, '&' and '/' folded, spaces to '-': "travel-hospitality".
std::string slug(std::string_view industry);

}  // namespace seedmine::seedgen
