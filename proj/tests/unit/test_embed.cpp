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

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>

#include "http_stub.hpp"
#include "seedmine/embed/embedder.hpp"
#include "seedmine/embed/embedding.hpp"
#include "seedmine/embed/store.hpp"
#include "seedmine/util/error.hpp"
#include "seedmine/util/io.hpp"

using namespace seedmine;
using namespace seedmine::embed;
namespace fs = std::filesystem;

namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
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

http::RetryPolicy fast_retry(int retries) {
  http::RetryPolicy p;
  p.max_retries = retries;
  p.initial_backoff = std::chrono::milliseconds(1);
  p.max_backoff = std::chrono::milliseconds(2);
  p.timeout = std::chrono::milliseconds(2000);
  return p;
}

// Fake embedding: vector whose first coordinate encodes the text length.
std::vector<float> fake_vector(const std::string& t, std::size_t dim) {
  std::vector<float> v(dim, 0.0f);
  v[0] = static_cast<float>(t.size());
  v[1 % dim] += 1.0f;
  return v;
}

}  // namespace

TEST_CASE("hashing embedder gives unit vectors independent of order and case") {
  HashingEmbedder e(64);
  const auto a = e.embed("alpha beta gamma");
  const auto b = e.embed("Gamma ALPHA   beta");
  CHECK(a == b);
  CHECK(a.dim() == 64);
  CHECK(norm(a.values()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cosine(a, e.embed("delta epsilon")) < 0.999);
  CHECK(code_of([&] { e.embed("  \n"); }) == ErrorCode::kEmptyText);
  CHECK(code_of([] { HashingEmbedder bad(0); }) == ErrorCode::kInvalidParams);
  const std::vector<std::string> batch = {"one", "two three", "one"};
  const auto out = e.embed_batch(batch);
  REQUIRE(out.size() == 3);
  CHECK(out[0] == out[2]);
  CHECK(out[1] == e.embed("two three"));
}

TEST_CASE("cosine properties") {
  const std::vector<double> a = {1, 2, 3}, b = {-2, 0.5, 4}, z = {0, 0, 0}, short_v = {1, 2};
  CHECK(cosine(a, b) == cosine(b, a));
  CHECK(cosine(a, a) == doctest::Approx(1.0));
  CHECK(cosine(a, std::vector<double>{-1, -2, -3}) == doctest::Approx(-1.0));
  const double expect = (1 * -2 + 2 * 0.5 + 3 * 4) / (std::sqrt(14.0) * std::sqrt(4 + 0.25 + 16));
  CHECK(cosine(a, b) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(code_of([&] { cosine(a, z); }) == ErrorCode::kZeroVector);
  CHECK(code_of([&] { cosine(a, short_v); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { EmbeddingVector::normalized(std::vector<double>{0, 0}); }) == ErrorCode::kZeroVector);
  CHECK(code_of([&] { EmbeddingVector::normalized(std::vector<double>{NAN, 1}); }) == ErrorCode::kZeroVector);
}

TEST_CASE("embedding store roundtrip and corruption") {
  const auto dir = fs::temp_directory_path() / "seedmine-embed-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  EmbeddingStore store(3);
  store.add("a#0", std::vector<float>{1, 0, 0});
  store.add("b#0", std::vector<float>{0.6f, 0.8f, 0});
  CHECK(code_of([&] { store.add("c", std::vector<float>{1, 2}); }) == ErrorCode::kDimensionMismatch);
  const auto path = dir / "e.bin";
  store.save(path);
  const auto back = EmbeddingStore::load(path);
  REQUIRE(back.size() == 2);
  CHECK(back.id(1) == "b#0");
  CHECK(back.vector(1)[1] == 0.8f);

  auto bytes = io::read_file(path);
  auto flipped = bytes;
  flipped.back() ^= 0x40;
  io::write_file_atomic(dir / "flip.bin", flipped);
  CHECK(code_of([&] { EmbeddingStore::load(dir / "flip.bin"); }) == ErrorCode::kCorruptIndex);
  io::write_file_atomic(dir / "trunc.bin", bytes.substr(0, bytes.size() - 5));
  CHECK(code_of([&] { EmbeddingStore::load(dir / "trunc.bin"); }) == ErrorCode::kCorruptIndex);
  auto magic = bytes;
  magic[0] ^= 0x01;
  io::write_file_atomic(dir / "magic.bin", magic);
  CHECK(code_of([&] { EmbeddingStore::load(dir / "magic.bin"); }) == ErrorCode::kCorruptIndex);
  auto version = bytes;
  version[8] = 9;  // first byte after the 8-byte magic
  io::write_file_atomic(dir / "version.bin", version);
  CHECK(code_of([&] { EmbeddingStore::load(dir / "version.bin"); }) == ErrorCode::kVersionMismatch);
  fs::remove_all(dir);
}

TEST_CASE("remote embedder keeps input order across concurrent batches") {
  std::atomic<int> calls{0};
  testing::StubServer server("/embed", [&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    const auto body = nlohmann::json::parse(req.body);
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& t : body.at("texts")) vectors.push_back(fake_vector(t.get<std::string>(), 4));
    res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
  });
  RemoteEmbedderOptions o;
  o.url = server.url("/embed");
  o.dim = 4;
  o.batch_size = 3;
  o.max_in_flight = 4;
  o.retry = fast_retry(0);
  RemoteEmbedder remote(o);
  std::vector<std::string> texts;
  for (int i = 1; i <= 20; ++i) texts.push_back(std::string(i, 'x'));
  const auto out = remote.embed_batch(texts);
  REQUIRE(out.size() == 20);
  CHECK(calls.load() == 7);
  for (int i = 0; i < 20; ++i) {
    const auto expect = EmbeddingVector::normalized(std::span<const float>(fake_vector(texts[i], 4)));
    CHECK(out[i] == expect);
  }
}

TEST_CASE("remote embedder retries server errors and sends the bearer token") {
  std::atomic<int> calls{0};
  std::string auth;
  std::mutex mu;
  testing::StubServer server("/embed", [&](const httplib::Request& req, httplib::Response& res) {
    if (++calls < 3) {
      res.status = 503;
      return;
    }
    std::lock_guard lock(mu);
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"vectors":[[0,2]]})", "application/json");
  });
  RemoteEmbedderOptions o;
  o.url = server.url("/embed");
  o.dim = 2;
  o.retry = fast_retry(3);
  o.bearer_token = "t0k";
  RemoteEmbedder remote(o);
  const auto v = remote.embed("hello");
  CHECK(v.values()[1] == 1.0);
  CHECK(calls.load() == 3);
  CHECK(auth == "Bearer t0k");

  o.retry = fast_retry(1);
  calls = 0;
  CHECK(code_of([&] { RemoteEmbedder(o).embed("hello"); }) == ErrorCode::kRemoteUnavailable);
  CHECK(calls.load() == 2);
}

TEST_CASE("remote embedder rejects wrong dimensions, short replies and dead endpoints") {
  // Always one 3-d vector, whatever was asked.
  testing::StubServer server("/embed", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"vectors":[[1,0,0]]})", "application/json");
  });
  RemoteEmbedderOptions o;
  o.url = server.url("/embed");
  o.dim = 2;
  o.retry = fast_retry(0);
  CHECK(code_of([&] { RemoteEmbedder(o).embed("x"); }) == ErrorCode::kDimensionMismatch);
  o.dim = 3;
  const std::vector<std::string> two = {"a", "b"};
  CHECK(code_of([&] { RemoteEmbedder(o).embed_batch(two); }) == ErrorCode::kRemoteUnavailable);
  o.url = "http://127.0.0.1:1/embed";
  CHECK(code_of([&] { RemoteEmbedder(o).embed("x"); }) == ErrorCode::kRemoteUnavailable);
  o.url = "ftp://host/embed";
  CHECK(code_of([&] { RemoteEmbedder{o}; }) == ErrorCode::kConfigError);
}
