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


#include "seedmine/embed/embedder.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/text.hpp"

namespace seedmine::embed {
namespace {

void require_text(std::string_view t) {
  if (text::trim(t).empty()) throw Error(ErrorCode::kEmptyText, "cannot embed empty text");
}

}  // namespace

EmbeddingVector Embedder::embed(std::string_view text) const {
  std::string owned(text);
  auto out = embed_batch(std::span<const std::string>(&owned, 1));
  return std::move(out.front());
}

HashingEmbedder::HashingEmbedder(std::size_t dim) : contract_{"hashing-bow", dim, std::nullopt} {
  if (dim == 0) throw Error(ErrorCode::kInvalidParams, "embedding dim must be positive");
}

EmbeddingVector HashingEmbedder::embed_one(std::string_view t) const {
  require_text(t);
  std::vector<double> acc(contract_.dim, 0.0);
  for (auto tok : text::split_whitespace(t)) {
    const std::uint64_t h = fnv1a64(text::lowercase(tok));
    const auto bucket = static_cast<std::size_t>(h % contract_.dim);
    acc[bucket] += (h >> 63) != 0 ? -1.0 : 1.0;
  }
  return EmbeddingVector::normalized(std::move(acc));
}

std::vector<EmbeddingVector> HashingEmbedder::embed_batch(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(embed_one(t));
  return out;
}

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderOptions options)
    : options_(std::move(options)),
      endpoint_(http::Endpoint::parse(options_.url)),
      contract_{"remote", options_.dim, options_.url} {
  if (options_.dim == 0 || options_.batch_size == 0 || options_.max_in_flight == 0) {
    throw Error(ErrorCode::kInvalidParams, "remote embedder needs positive dim, batch_size and max_in_flight");
  }
}

std::vector<EmbeddingVector> RemoteEmbedder::request(std::span<const std::string> texts) const {
  nlohmann::json body;
  body["texts"] = std::vector<std::string>(texts.begin(), texts.end());
  std::vector<std::pair<std::string, std::string>> headers;
  if (!options_.bearer_token.empty()) headers.emplace_back("Authorization", "Bearer " + options_.bearer_token);

  const auto reply = http::post_json(endpoint_, body, options_.retry, headers);
  const auto it = reply.find("vectors");
  if (it == reply.end() || !it->is_array() || it->size() != texts.size()) {
    throw Error(ErrorCode::kRemoteUnavailable, "embedder reply lacks one vector per text");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& v : *it) {
    if (!v.is_array() || v.size() != options_.dim) {
      throw Error(ErrorCode::kDimensionMismatch, "embedder returned dim " + std::to_string(v.size()) +
                                                     ", expected " + std::to_string(options_.dim));
    }
    out.push_back(EmbeddingVector::normalized(v.get<std::vector<double>>()));
  }
  return out;
}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(std::span<const std::string> texts) const {
  for (const auto& t : texts) require_text(t);
  const std::size_t n_batches = (texts.size() + options_.batch_size - 1) / options_.batch_size;
  std::vector<std::vector<EmbeddingVector>> slots(n_batches);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t b = next++; b < n_batches; b = next++) {
      {
        std::lock_guard lock(failure_mu);
        if (failure) return;
      }
      try {
        const std::size_t begin = b * options_.batch_size;
        const std::size_t len = std::min(options_.batch_size, texts.size() - begin);
        slots[b] = request(texts.subspan(begin, len));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t n_workers = std::min(options_.max_in_flight, n_batches);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  if (n_workers > 0) worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (auto& s : slots) {
    for (auto& v : s) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace seedmine::embed
