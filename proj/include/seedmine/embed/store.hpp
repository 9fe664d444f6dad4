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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace seedmine::embed {

// Flat id -> float32 vector table, the hand-off between the embed and index
// stages. File: {magic, version, dim, count, crc32 of payload} then per row
// the id and dim float32 values, little-endian.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim) : dim_(dim) {}

  // Throws DimensionMismatch.
  void add(std::string id, std::span<const float> v);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::span<const float> vector(std::size_t i) const;

  void save(const std::filesystem::path& path) const;
  // Throws CorruptIndex (bad magic, checksum, truncation) or VersionMismatch.
  static EmbeddingStore load(const std::filesystem::path& path);

 private:
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<float> data_;
};

}  // namespace seedmine::embed
