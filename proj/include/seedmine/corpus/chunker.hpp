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
#include <string>
#include <string_view>
#include <vector>

#include "seedmine/corpus/types.hpp"

namespace seedmine::corpus {

inline constexpr std::size_t kDefaultMaxChunkWords = 2500;

// Rule-based sentence splitter. A boundary is '.', '!' or '?' (plus any
// trailing closing quotes/brackets) followed by whitespace and then an
// uppercase letter or an opening quote/bracket. Periods after known
// abbreviations and single-letter initials are not boundaries. Blank lines
// always end a sentence. Returned sentences have whitespace runs collapsed.
std::vector<std::string> split_sentences(std::string_view text);

// Greedy packing of whole sentences into chunks of at most max_words words.
// A sentence longer than max_words is flushed on its own and hard-split at
// word boundaries; every piece of such a split is flagged oversize.
std::vector<Chunk> chunk_sentences(const std::string& doc_id, const std::vector<std::string>& sentences,
                                   std::size_t max_words = kDefaultMaxChunkWords);

std::vector<Chunk> chunk_document(const Document& doc, std::size_t max_words = kDefaultMaxChunkWords);

}  // namespace seedmine::corpus
