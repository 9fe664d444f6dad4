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


#include "seedmine/evalkit/lexical.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "seedmine/corpus/chunker.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::evalkit {
namespace {

bool is_word_char(unsigned char c) { return text::is_alpha(static_cast<char>(c)) || text::is_digit(static_cast<char>(c)) || c >= 0x80; }

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

std::vector<std::string> require_tokens(std::string_view t) {
  auto tokens = word_tokens(t);
  if (tokens.empty()) throw Error(ErrorCode::kEmptyText, "text has no word tokens");
  return tokens;
}

double mtld_pass(const std::vector<std::string>& tokens, double threshold, bool reverse) {
  double factors = 0.0;
  std::unordered_set<std::string_view> types;
  std::size_t count = 0;
  double ttr = 1.0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    const auto& tok = reverse ? tokens[tokens.size() - 1 - k] : tokens[k];
    types.insert(tok);
    ++count;
    ttr = static_cast<double>(types.size()) / static_cast<double>(count);
    if (ttr < threshold) {
      factors += 1.0;
      types.clear();
      count = 0;
      ttr = 1.0;
    }
  }
  if (count > 0) factors += (1.0 - ttr) / (1.0 - threshold);
  return static_cast<double>(tokens.size()) / std::max(1.0, factors);
}

void summarize(MetricSummary& m, const std::vector<double>& real, const std::vector<double>& syn) {
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  m.real = mean(real);
  m.synthetic = mean(syn);
  m.delta = std::abs(m.real - m.synthetic);
  m.real_n = real.size();
  m.synthetic_n = syn.size();
}

}  // namespace

std::vector<std::string> word_tokens(std::string_view t) {
  std::vector<std::string> out;
  for (auto tok : text::split_whitespace(t)) {
    std::size_t b = 0, e = tok.size();
    while (b < e && !is_word_char(static_cast<unsigned char>(tok[b]))) ++b;
    while (e > b && !is_word_char(static_cast<unsigned char>(tok[e - 1]))) --e;
    if (b < e) out.push_back(text::lowercase(tok.substr(b, e - b)));
  }
  return out;
}

int count_syllables(std::string_view word) {
  std::string w;
  for (char c : word) {
    if (text::is_alpha(c)) w += text::to_lower(c);
  }
  int groups = 0;
  bool prev_vowel = false;
  for (char c : w) {
    const bool v = is_vowel(c);
    if (v && !prev_vowel) ++groups;
    prev_vowel = v;
  }
  const std::size_t n = w.size();
  if (n >= 1 && w[n - 1] == 'e') {
    const bool consonant_le = n >= 3 && w[n - 2] == 'l' && !is_vowel(w[n - 3]);
    if (!consonant_le) --groups;
  }
  return std::max(1, groups);
}

double lexical_diversity(std::string_view t) {
  auto tokens = require_tokens(t);
  if (tokens.size() > kTtrWindow) tokens.resize(kTtrWindow);
  const std::unordered_set<std::string> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

double flesch_kincaid_grade(std::string_view t) {
  const auto tokens = require_tokens(t);
  const auto sentences = corpus::split_sentences(t);
  if (sentences.empty()) throw Error(ErrorCode::kEmptyText, "text has no sentences");
  long syllables = 0;
  for (const auto& w : tokens) syllables += count_syllables(w);
  const double words = static_cast<double>(tokens.size());
  return 0.39 * (words / static_cast<double>(sentences.size())) + 11.8 * (static_cast<double>(syllables) / words) -
         15.59;
}

double hapax_ratio(std::string_view t) {
  const auto tokens = require_tokens(t);
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& tok : tokens) ++freq[tok];
  std::size_t once = 0;
  for (const auto& [w, c] : freq) once += c == 1 ? 1 : 0;
  return static_cast<double>(once) / static_cast<double>(freq.size());
}

double mtld(const std::vector<std::string>& tokens, double threshold) {
  if (tokens.size() < 10) throw Error(ErrorCode::kTooShort, "MTLD needs at least 10 tokens");
  if (!(threshold > 0.0 && threshold < 1.0)) throw Error(ErrorCode::kInvalidParams, "threshold must lie in (0, 1)");
  return 0.5 * (mtld_pass(tokens, threshold, false) + mtld_pass(tokens, threshold, true));
}

double mtld(std::string_view t, double threshold) { return mtld(word_tokens(t), threshold); }

LexicalReport lexical_report(std::string_view t) {
  LexicalReport r;
  const auto tokens = require_tokens(t);
  r.token_count = tokens.size();
  r.lexical_diversity = lexical_diversity(t);
  r.flesch_kincaid_grade = flesch_kincaid_grade(t);
  r.hapax_ratio = hapax_ratio(t);
  if (tokens.size() >= 10) r.mtld = mtld(tokens);
  return r;
}

CorpusComparison compare_corpora(const std::vector<std::string>& real, const std::vector<std::string>& synthetic) {
  if (real.empty() || synthetic.empty()) {
    throw Error(ErrorCode::kPreconditionViolated, "both corpora must be nonempty");
  }
  struct Columns {
    std::vector<double> ttr, fk, hapax, mtld;
  };
  auto collect = [](const std::vector<std::string>& docs) {
    Columns c;
    for (const auto& d : docs) {
      if (word_tokens(d).empty()) continue;
      const auto r = lexical_report(d);
      c.ttr.push_back(r.lexical_diversity);
      c.fk.push_back(r.flesch_kincaid_grade);
      c.hapax.push_back(r.hapax_ratio);
      if (r.mtld) c.mtld.push_back(*r.mtld);
    }
    return c;
  };
  const auto a = collect(real);
  const auto b = collect(synthetic);
  CorpusComparison out;
  summarize(out.ttr, a.ttr, b.ttr);
  summarize(out.fk_grade, a.fk, b.fk);
  summarize(out.hapax, a.hapax, b.hapax);
  summarize(out.mtld, a.mtld, b.mtld);
  return out;
}

nlohmann::json to_json(const CorpusComparison& c) {
  auto row = [](const MetricSummary& m) {
    return nlohmann::json{{"real", m.real},     {"synthetic", m.synthetic},       {"delta", m.delta},
                          {"real_n", m.real_n}, {"synthetic_n", m.synthetic_n}};
  };
  return nlohmann::json{
      {"TTR-1000", row(c.ttr)}, {"FK-Grade", row(c.fk_grade)}, {"Hapax", row(c.hapax)}, {"MTLD", row(c.mtld)}};
}

std::string render_table(const CorpusComparison& c) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %14s %14s %10s\n", "Metric", "Real", "Synthetic", "|Delta|");
  out += line;
  const std::pair<const char*, const MetricSummary*> rows[] = {
      {"TTR-1000", &c.ttr}, {"FK-Grade", &c.fk_grade}, {"Hapax", &c.hapax}, {"MTLD", &c.mtld}};
  for (const auto& [name, m] : rows) {
    std::snprintf(line, sizeof line, "%-10s %14.4f %14.4f %10.4f\n", name, m->real, m->synthetic, m->delta);
    out += line;
  }
  return out;
}

}  // namespace seedmine::evalkit
