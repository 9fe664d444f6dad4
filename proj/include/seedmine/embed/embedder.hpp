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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seedmine/embed/embedding.hpp"
#include "seedmine/util/http.hpp"

namespace seedmine::embed {

struct EmbedderContract {
  std::string name;
  std::size_t dim = kDefaultDim;
  std::optional<std::string> endpoint;  // absent for local embedders
};

// Text -> unit vector. Implementations must reject text that is empty after
// trimming with EmptyText, and return vectors of contract().dim.
class Embedder {
 public:
  virtual ~Embedder() = default;

  virtual const EmbedderContract& contract() const noexcept = 0;
  std::size_t dim() const noexcept { return contract().dim; }

  // Output i corresponds to input i.
  virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const = 0;

  EmbeddingVector embed(std::string_view text) const;
};

// Deterministic signed hashed bag-of-words: lowercase whitespace tokens,
// each token adds +/-1 to bucket (hash mod dim), then L2 normalization.
// Word order does not affect the result.
class HashingEmbedder final : public Embedder {
 public:
  explicit HashingEmbedder(std::size_t dim = kDefaultDim);

  const EmbedderContract& contract() const noexcept override { return contract_; }
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override;

  EmbeddingVector embed_one(std::string_view text) const;

 private:
  EmbedderContract contract_;
};

struct RemoteEmbedderOptions {
  std::string url;  // http://host:port/path
  std::size_t dim = kDefaultDim;
  std::size_t batch_size = 32;
  std::size_t max_in_flight = 4;
  http::RetryPolicy retry;
  std::string bearer_token;  // sent as Authorization header when non-empty
};

// Client for an embedding service speaking
//   request  {"texts": [string, ...]}
//   response {"vectors": [[float, ...], ...]}   (same order)
// Batches are sent with bounded concurrency; results are placed by batch
// position, never by arrival order. Returned vectors are renormalized.
class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteEmbedderOptions options);

  const EmbedderContract& contract() const noexcept override { return contract_; }
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override;

 private:
  std::vector<EmbeddingVector> request(std::span<const std::string> texts) const;

  RemoteEmbedderOptions options_;
  http::Endpoint endpoint_;
  EmbedderContract contract_;
};

}  // namespace seedmine::embed
