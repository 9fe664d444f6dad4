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


#include <doctest.h>

#include <filesystem>
#include <set>

#include "oracles.hpp"
#include "seedmine/index/hnsw.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/io.hpp"

using namespace seedmine;
using namespace seedmine::index;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kDim = 32;

IndexParams small_params() {
  IndexParams p;
  p.m = 12;
  p.ef_construction = 100;
  p.ef_search = 80;
  p.dim = kDim;
  p.seed = 3;
  return p;
}

struct Built {
  std::vector<std::string> ids;
  std::vector<std::vector<float>> vectors;
  HnswIndex index{small_params()};
};

const Built& built() {
  static const Built b = [] {
    Built out;
    out.vectors = testing::random_unit_vectors(2000, kDim, 17);
    for (std::size_t i = 0; i < out.vectors.size(); ++i) {
      out.ids.push_back("v" + std::to_string(i));
      out.index.insert(out.ids.back(), out.vectors[i]);
    }
    return out;
  }();
  return b;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIoFailure;
}

}  // namespace

TEST_CASE("parameter validation") {
  auto p = small_params();
  p.m = 1;
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::kInvalidParams);
  p = small_params();
  p.ef_construction = 5;
  CHECK(code_of([&] { HnswIndex{p}; }) == ErrorCode::kInvalidParams);
  p = small_params();
  p.dim = 0;
  CHECK(code_of([&] { p.validate(); }) == ErrorCode::kInvalidParams);
}

TEST_CASE("recall against exhaustive search") {
  const auto& b = built();
  const auto corpus = testing::as_corpus(b.ids, b.vectors);
  const auto queries = testing::random_unit_vectors(100, kDim, 99);
  double total = 0.0;
  for (const auto& q : queries) {
    const auto exact = testing::brute_force_knn(corpus, std::vector<double>(q.begin(), q.end()), 10);
    total += testing::recall(b.index.query(q, 10), exact);
  }
  CHECK(total / queries.size() >= 0.95);
}

TEST_CASE("results are ordered, unique, bounded and use true similarities") {
  const auto& b = built();
  const auto queries = testing::random_unit_vectors(20, kDim, 5);
  for (const auto& q : queries) {
    for (std::size_t k : {1, 7, 50}) {
      const auto res = b.index.query(q, k);
      CHECK(res.size() == k);
      std::set<std::string> seen;
      for (std::size_t i = 0; i < res.size(); ++i) {
        CHECK(seen.insert(res[i].id).second);
        if (i) CHECK_FALSE(ranks_before(res[i], res[i - 1]));
        const auto idx = std::stoul(res[i].id.substr(1));
        double s = 0.0;
        for (std::size_t d = 0; d < kDim; ++d) s += double(q[d]) * b.vectors[idx][d];
        CHECK(res[i].similarity == doctest::Approx(s).epsilon(1e-5));
      }
    }
  }
  CHECK(b.index.query(queries[0], 0).empty());
  CHECK(b.index.query(queries[0], 5000).size() == b.ids.size());
}

TEST_CASE("degree bounds and link invariants") {
  const auto& b = built();
  const auto& idx = b.index;
  CHECK(idx.size() == 2000);
  CHECK(idx.max_level() >= 1);
  for (std::uint32_t n = 0; n < idx.size(); ++n) {
    for (int l = 0; l <= idx.level_of(n); ++l) {
      const auto links = idx.links(n, l);
      CHECK(links.size() <= idx.max_degree(l));
      std::set<std::uint32_t> uniq(links.begin(), links.end());
      CHECK(uniq.size() == links.size());
      CHECK(uniq.count(n) == 0);
      for (auto m : links) CHECK(idx.level_of(m) >= l);
    }
  }
}

TEST_CASE("every stored vector is its own nearest neighbor") {
  const auto& b = built();
  for (std::size_t i = 0; i < b.ids.size(); i += 37) {
    const auto res = b.index.query(b.vectors[i], 1);
    REQUIRE(res.size() == 1);
    CHECK(res[0].id == b.ids[i]);
  }
}

TEST_CASE("insert errors") {
  HnswIndex idx(small_params());
  const auto v = testing::random_unit_vectors(1, kDim, 1)[0];
  idx.insert("a", v);
  CHECK(code_of([&] { idx.insert("a", v); }) == ErrorCode::kDuplicateId);
  std::vector<float> wrong(kDim + 1, 0.1f);
  CHECK(code_of([&] { idx.insert("b", wrong); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { idx.query(wrong, 1); }) == ErrorCode::kDimensionMismatch);
  HnswIndex empty(small_params());
  CHECK(empty.query(v, 3).empty());
}

TEST_CASE("persist and load reproduce the graph and answers byte for byte") {
  const auto dir = fs::temp_directory_path() / "seedmine-index-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto& b = built();
  b.index.persist(dir / "a.hnsw");
  const auto loaded = HnswIndex::load(dir / "a.hnsw");
  loaded.persist(dir / "b.hnsw");
  CHECK(io::read_file(dir / "a.hnsw") == io::read_file(dir / "b.hnsw"));
  for (const auto& q : testing::random_unit_vectors(10, kDim, 8)) CHECK(loaded.query(q, 10) == b.index.query(q, 10));

  const auto bytes = io::read_file(dir / "a.hnsw");
  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  io::write_file_atomic(dir / "flip.hnsw", flipped);
  CHECK(code_of([&] { HnswIndex::load(dir / "flip.hnsw"); }) == ErrorCode::kCorruptIndex);
  io::write_file_atomic(dir / "trunc.hnsw", bytes.substr(0, 20));
  CHECK(code_of([&] { HnswIndex::load(dir / "trunc.hnsw"); }) == ErrorCode::kCorruptIndex);
  auto version = bytes;
  version[8] = 7;
  io::write_file_atomic(dir / "version.hnsw", version);
  CHECK(code_of([&] { HnswIndex::load(dir / "version.hnsw"); }) == ErrorCode::kVersionMismatch);
  fs::remove_all(dir);
}

TEST_CASE("the same seed and insertion order build the same file") {
  const auto dir = fs::temp_directory_path() / "seedmine-index-det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto vs = testing::random_unit_vectors(300, kDim, 4);
  auto build = [&](std::uint64_t seed, const fs::path& out) {
    auto p = small_params();
    p.seed = seed;
    HnswIndex idx(p);
    for (std::size_t i = 0; i < vs.size(); ++i) idx.insert("n" + std::to_string(i), vs[i]);
    idx.persist(out);
  };
  build(1, dir / "x");
  build(1, dir / "y");
  build(2, dir / "z");
  CHECK(io::read_file(dir / "x") == io::read_file(dir / "y"));
  CHECK(io::read_file(dir / "x") != io::read_file(dir / "z"));
  fs::remove_all(dir);
}

TEST_CASE("flat index is exact") {
  const auto& b = built();
  FlatIndex flat(kDim);
  for (std::size_t i = 0; i < b.ids.size(); ++i) flat.insert(b.ids[i], b.vectors[i]);
  const auto corpus = testing::as_corpus(b.ids, b.vectors);
  for (const auto& q : testing::random_unit_vectors(10, kDim, 12)) {
    const auto exact = testing::brute_force_knn(corpus, std::vector<double>(q.begin(), q.end()), 25);
    const auto got = flat.query(q, 25);
    CHECK(testing::recall(got, exact) == 1.0);
  }
  CHECK(code_of([&] { flat.insert(b.ids[0], b.vectors[0]); }) == ErrorCode::kDuplicateId);
}
