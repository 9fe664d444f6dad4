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


#include "seedmine/embed/store.hpp"

#include "seedmine/util/error.hpp"
#include "seedmine/util/io.hpp"

namespace seedmine::embed {
namespace {

constexpr char kMagic[8] = {'S', 'E', 'E', 'D', 'E', 'M', 'B', 'D'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void EmbeddingStore::add(std::string id, std::span<const float> v) {
  if (v.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "vector dim " + std::to_string(v.size()) + " != store dim " +
                                                   std::to_string(dim_));
  }
  ids_.push_back(std::move(id));
  data_.insert(data_.end(), v.begin(), v.end());
}

std::span<const float> EmbeddingStore::vector(std::size_t i) const {
  if (i >= ids_.size()) throw Error(ErrorCode::kInvalidParams, "row out of range");
  return std::span<const float>(data_).subspan(i * dim_, dim_);
}

void EmbeddingStore::save(const std::filesystem::path& path) const {
  io::ByteWriter payload;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    payload.str(ids_[i]);
    for (float x : vector(i)) payload.f32(x);
  }
  io::ByteWriter file;
  file.raw(std::string_view(kMagic, sizeof kMagic));
  file.u32(kVersion);
  file.u32(static_cast<std::uint32_t>(dim_));
  file.u64(ids_.size());
  file.u32(io::crc32(payload.bytes()));
  file.raw(payload.bytes());
  io::write_file_atomic(path, file.bytes());
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  io::ByteReader in(bytes, ErrorCode::kCorruptIndex);
  if (in.raw(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw Error(ErrorCode::kCorruptIndex, "bad magic: " + path.string());
  }
  const std::uint32_t version = in.u32();
  if (version != kVersion) {
    throw Error(ErrorCode::kVersionMismatch, "embeddings version " + std::to_string(version));
  }
  const std::uint32_t dim = in.u32();
  const std::uint64_t count = in.u64();
  const std::uint32_t checksum = in.u32();
  if (dim == 0) throw Error(ErrorCode::kCorruptIndex, "zero dimension");
  if (io::crc32(std::string_view(bytes).substr(bytes.size() - in.remaining())) != checksum) {
    throw Error(ErrorCode::kCorruptIndex, "checksum mismatch: " + path.string());
  }
  EmbeddingStore store(dim);
  std::vector<float> row(dim);
  for (std::uint64_t n = 0; n < count; ++n) {
    std::string id = in.str();
    for (auto& x : row) x = in.f32();
    store.add(std::move(id), row);
  }
  if (!in.at_end()) throw Error(ErrorCode::kCorruptIndex, "trailing bytes");
  return store;
}

}  // namespace seedmine::embed
