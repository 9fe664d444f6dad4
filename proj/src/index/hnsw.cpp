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


#include "seedmine/index/hnsw.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "seedmine/simd/kernels.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/hash.hpp"
#include "seedmine/util/io.hpp"

namespace seedmine::index {
namespace {

constexpr char kMagic[8] = {'S', 'E', 'E', 'D', 'H', 'N', 'S', 'W'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 8 + 4 + 4 + 4 + 4 + 8 + 8 + 4;
constexpr std::uint32_t kNoEntry = 0xFFFFFFFFu;
constexpr int kMaxLevel = 31;

// Reusable visited marks, one table per thread so concurrent readers never
// share state.
class VisitedTags {
 public:
  void reset(std::size_t n) {
    if (tags_.size() < n) tags_.resize(n, 0);
    if (++epoch_ == 0) {
      std::fill(tags_.begin(), tags_.end(), 0);
      epoch_ = 1;
    }
  }
  bool test_and_set(std::uint32_t i) {
    if (tags_[i] == epoch_) return true;
    tags_[i] = epoch_;
    return false;
  }

 private:
  std::vector<std::uint32_t> tags_;
  std::uint32_t epoch_ = 0;
};

thread_local VisitedTags t_visited;

void check_dim(std::size_t got, std::size_t want) {
  if (got != want) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector dim " + std::to_string(got) + " != index dim " + std::to_string(want));
  }
}

std::vector<Neighbor> finalize(std::vector<Neighbor> found, std::size_t k) {
  std::sort(found.begin(), found.end(), ranks_before);
  if (found.size() > k) found.resize(k);
  return found;
}

}  // namespace

void IndexParams::validate() const {
  if (m < 2) throw Error(ErrorCode::kInvalidParams, "m must be >= 2");
  if (ef_construction < m) throw Error(ErrorCode::kInvalidParams, "ef_construction must be >= m");
  if (ef_search < 1) throw Error(ErrorCode::kInvalidParams, "ef_search must be >= 1");
  if (dim < 1) throw Error(ErrorCode::kInvalidParams, "dim must be >= 1");
}

void from_json(const nlohmann::json& j, IndexParams& p) {
  p.m = j.value("m", p.m);
  p.ef_construction = j.value("ef_construction", p.ef_construction);
  p.ef_search = j.value("ef_search", p.ef_search);
  p.dim = j.value("dim", p.dim);
  p.seed = j.value("seed", p.seed);
}

void to_json(nlohmann::json& j, const IndexParams& p) {
  j = nlohmann::json{{"m", p.m},
                     {"ef_construction", p.ef_construction},
                     {"ef_search", p.ef_search},
                     {"dim", p.dim},
                     {"seed", p.seed}};
}

HnswIndex::HnswIndex(IndexParams params) : params_(params) { params_.validate(); }

std::span<const float> HnswIndex::vector_of(std::uint32_t node) const {
  return std::span<const float>(data_).subspan(static_cast<std::size_t>(node) * params_.dim, params_.dim);
}

std::span<const std::uint32_t> HnswIndex::links(std::uint32_t node, int level) const {
  const auto& per_node = links_.at(node);
  if (level < 0 || static_cast<std::size_t>(level) >= per_node.size()) return {};
  return per_node[static_cast<std::size_t>(level)];
}

float HnswIndex::similarity(std::span<const float> q, std::uint32_t node) const {
  return simd::dot(q, vector_of(node));
}

float HnswIndex::similarity(std::uint32_t a, std::uint32_t b) const {
  return simd::dot(vector_of(a), vector_of(b));
}

int HnswIndex::draw_level(std::uint64_t ordinal) const {
  const std::uint64_t bits = splitmix64(hash_combine(params_.seed, ordinal));
  const double u = (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double ml = 1.0 / std::log(static_cast<double>(params_.m));
  return std::min(kMaxLevel, static_cast<int>(std::floor(-std::log(u) * ml)));
}

// Beam search on one layer. Result is ordered best first: similarity
// descending, then node ordinal ascending.
std::vector<HnswIndex::Candidate> HnswIndex::search_layer(std::span<const float> q,
                                                          const std::vector<Candidate>& entries,
                                                          std::size_t ef, int level) const {
  auto better = [](const Candidate& a, const Candidate& b) {
    return a.sim > b.sim || (a.sim == b.sim && a.node < b.node);
  };
  auto best_on_top = [&](const Candidate& a, const Candidate& b) { return better(b, a); };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(best_on_top)> frontier(best_on_top);
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(better)> found(better);  // worst on top

  auto& visited = t_visited;
  visited.reset(ids_.size());
  for (const auto& e : entries) {
    if (visited.test_and_set(e.node)) continue;
    frontier.push(e);
    found.push(e);
    if (found.size() > ef) found.pop();
  }

  while (!frontier.empty()) {
    const Candidate c = frontier.top();
    if (found.size() >= ef && better(found.top(), c)) break;
    frontier.pop();
    for (std::uint32_t nb : links(c.node, level)) {
      if (visited.test_and_set(nb)) continue;
      const Candidate cand{similarity(q, nb), nb};
      if (found.size() < ef || better(cand, found.top())) {
        frontier.push(cand);
        found.push(cand);
        if (found.size() > ef) found.pop();
      }
    }
  }

  std::vector<Candidate> out;
  out.reserve(found.size());
  while (!found.empty()) {
    out.push_back(found.top());
    found.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Diversity heuristic: walk candidates best first and keep one only if it is
// closer to the base point than to every neighbor already kept.
// `sorted` is best first with distinct nodes.
std::vector<HnswIndex::Candidate> HnswIndex::select_neighbors(const std::vector<Candidate>& sorted,
                                                              std::size_t max_count) const {
  std::vector<Candidate> kept;
  kept.reserve(max_count);
  for (const auto& c : sorted) {
    if (kept.size() >= max_count) break;
    bool diverse = true;
    for (const auto& r : kept) {
      if (similarity(c.node, r.node) > c.sim) {
        diverse = false;
        break;
      }
    }
    if (diverse) kept.push_back(c);
  }
  // Fill the remaining slots with the closest pruned candidates. On
  // high-dimensional data the heuristic alone leaves nodes under-connected.
  if (kept.size() < max_count) {
    std::vector<char> taken(sorted.size(), 0);
    for (std::size_t i = 0, j = 0; i < sorted.size() && j < kept.size(); ++i) {
      if (sorted[i].node == kept[j].node) {
        taken[i] = 1;
        ++j;
      }
    }
    for (std::size_t i = 0; i < sorted.size() && kept.size() < max_count; ++i) {
      if (!taken[i]) kept.push_back(sorted[i]);
    }
  }
  return kept;
}

void HnswIndex::shrink_links(std::uint32_t node, int level) {
  auto& list = links_[node][static_cast<std::size_t>(level)];
  const std::size_t cap = max_degree(level);
  if (list.size() <= cap) return;
  std::vector<Candidate> cands;
  cands.reserve(list.size());
  for (std::uint32_t nb : list) cands.push_back({similarity(node, nb), nb});
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.sim > b.sim || (a.sim == b.sim && a.node < b.node);
  });
  const auto kept = select_neighbors(cands, cap);
  list.clear();
  for (const auto& c : kept) list.push_back(c.node);
}

void HnswIndex::insert(const std::string& id, std::span<const float> v) {
  check_dim(v.size(), params_.dim);
  if (by_id_.contains(id)) throw Error(ErrorCode::kDuplicateId, "id already indexed: " + id);
  if (ids_.size() >= kNoEntry) throw Error(ErrorCode::kInvalidParams, "index is full");

  const auto node = static_cast<std::uint32_t>(ids_.size());
  const int level = draw_level(node);
  ids_.push_back(id);
  by_id_.emplace(id, node);
  data_.insert(data_.end(), v.begin(), v.end());
  levels_.push_back(level);
  links_.emplace_back(static_cast<std::size_t>(level) + 1);

  if (!entry_) {
    entry_ = node;
    max_level_ = level;
    return;
  }

  const auto q = vector_of(node);
  std::vector<Candidate> entry{{similarity(q, *entry_), *entry_}};
  for (int lc = max_level_; lc > level; --lc) {
    entry = search_layer(q, entry, 1, lc);
  }
  for (int lc = std::min(level, max_level_); lc >= 0; --lc) {
    auto found = search_layer(q, entry, params_.ef_construction, lc);
    const auto chosen = select_neighbors(found, params_.m);
    auto& own = links_[node][static_cast<std::size_t>(lc)];
    for (const auto& c : chosen) {
      own.push_back(c.node);
      links_[c.node][static_cast<std::size_t>(lc)].push_back(node);
      shrink_links(c.node, lc);
    }
    entry = std::move(found);
  }
  if (level > max_level_) {
    max_level_ = level;
    entry_ = node;
  }
}

std::vector<Neighbor> HnswIndex::query(std::span<const float> q, std::size_t k,
                                       std::optional<std::size_t> ef_search) const {
  check_dim(q.size(), params_.dim);
  if (!entry_ || k == 0) return {};
  const std::size_t ef = std::max(ef_search.value_or(params_.ef_search), k);

  std::vector<Candidate> entry{{similarity(q, *entry_), *entry_}};
  for (int lc = max_level_; lc > 0; --lc) entry = search_layer(q, entry, 1, lc);
  const auto found = search_layer(q, entry, ef, 0);

  std::vector<Neighbor> out;
  out.reserve(found.size());
  for (const auto& c : found) out.push_back({ids_[c.node], static_cast<double>(c.sim)});
  return finalize(std::move(out), k);
}

void HnswIndex::persist(const std::filesystem::path& path) const {
  io::ByteWriter payload;
  payload.u32(static_cast<std::uint32_t>(params_.ef_search));
  payload.u32(entry_.value_or(kNoEntry));
  payload.u32(static_cast<std::uint32_t>(max_level_));
  for (std::uint32_t n = 0; n < ids_.size(); ++n) {
    payload.str(ids_[n]);
    payload.u32(static_cast<std::uint32_t>(levels_[n]));
    for (float x : vector_of(n)) payload.f32(x);
    for (const auto& layer : links_[n]) {
      payload.u32(static_cast<std::uint32_t>(layer.size()));
      for (std::uint32_t nb : layer) payload.u32(nb);
    }
  }

  io::ByteWriter header;
  header.raw(std::string_view(kMagic, sizeof kMagic));
  header.u32(kVersion);
  header.u32(static_cast<std::uint32_t>(params_.dim));
  header.u32(static_cast<std::uint32_t>(params_.m));
  header.u32(static_cast<std::uint32_t>(params_.ef_construction));
  header.u64(params_.seed);
  header.u64(ids_.size());
  header.u32(io::crc32(payload.bytes()));

  std::string file = header.take();
  file += payload.bytes();
  io::write_file_atomic(path, file);
}

HnswIndex HnswIndex::load(const std::filesystem::path& path) {
  const std::string file = io::read_file(path);
  if (file.size() < kHeaderSize) throw Error(ErrorCode::kCorruptIndex, "truncated header: " + path.string());
  io::ByteReader header(std::string_view(file).substr(0, kHeaderSize), ErrorCode::kCorruptIndex);
  if (header.raw(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw Error(ErrorCode::kCorruptIndex, "bad magic: " + path.string());
  }
  const std::uint32_t version = header.u32();
  if (version != kVersion) {
    throw Error(ErrorCode::kVersionMismatch, "index version " + std::to_string(version) + ", expected " +
                                                 std::to_string(kVersion));
  }
  IndexParams params;
  params.dim = header.u32();
  params.m = header.u32();
  params.ef_construction = header.u32();
  params.seed = header.u64();
  const std::uint64_t count = header.u64();
  const std::uint32_t checksum = header.u32();

  const std::string_view body = std::string_view(file).substr(kHeaderSize);
  if (io::crc32(body) != checksum) throw Error(ErrorCode::kCorruptIndex, "checksum mismatch: " + path.string());

  io::ByteReader in(body, ErrorCode::kCorruptIndex);
  params.ef_search = in.u32();
  try {
    params.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptIndex, std::string("bad parameters in header: ") + e.what());
  }
  HnswIndex idx(params);
  const std::uint32_t entry = in.u32();
  idx.max_level_ = static_cast<int>(in.u32());
  if (entry != kNoEntry) idx.entry_ = entry;

  for (std::uint64_t n = 0; n < count; ++n) {
    std::string id = in.str();
    const auto level = static_cast<int>(in.u32());
    if (level < 0 || level > kMaxLevel) throw Error(ErrorCode::kCorruptIndex, "bad node level");
    for (std::size_t d = 0; d < params.dim; ++d) idx.data_.push_back(in.f32());
    std::vector<std::vector<std::uint32_t>> layers(static_cast<std::size_t>(level) + 1);
    for (auto& layer : layers) {
      const std::uint32_t deg = in.u32();
      if (deg > 2 * params.m) throw Error(ErrorCode::kCorruptIndex, "node degree exceeds bound");
      layer.resize(deg);
      for (auto& nb : layer) {
        nb = in.u32();
        if (nb >= count) throw Error(ErrorCode::kCorruptIndex, "link to unknown node");
      }
    }
    if (!idx.by_id_.emplace(id, static_cast<std::uint32_t>(n)).second) {
      throw Error(ErrorCode::kCorruptIndex, "duplicate id in file");
    }
    idx.ids_.push_back(std::move(id));
    idx.levels_.push_back(level);
    idx.links_.push_back(std::move(layers));
  }
  if (!in.at_end()) throw Error(ErrorCode::kCorruptIndex, "trailing bytes");
  if ((count == 0) != !idx.entry_ || (idx.entry_ && *idx.entry_ >= count)) {
    throw Error(ErrorCode::kCorruptIndex, "bad entry point");
  }
  return idx;
}

FlatIndex::FlatIndex(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidParams, "dim must be >= 1");
}

void FlatIndex::insert(const std::string& id, std::span<const float> v) {
  check_dim(v.size(), dim_);
  if (!by_id_.emplace(id, static_cast<std::uint32_t>(ids_.size())).second) {
    throw Error(ErrorCode::kDuplicateId, "id already indexed: " + id);
  }
  ids_.push_back(id);
  data_.insert(data_.end(), v.begin(), v.end());
}

std::vector<Neighbor> FlatIndex::query(std::span<const float> q, std::size_t k,
                                       std::optional<std::size_t>) const {
  check_dim(q.size(), dim_);
  std::vector<Neighbor> all;
  all.reserve(ids_.size());
  for (std::size_t n = 0; n < ids_.size(); ++n) {
    const auto v = std::span<const float>(data_).subspan(n * dim_, dim_);
    all.push_back({ids_[n], static_cast<double>(simd::dot(q, v))});
  }
  return finalize(std::move(all), k);
}

}  // namespace seedmine::index
