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

#include <cmath>
#include <random>

#include "seedmine/simd/kernels.hpp"

using namespace seedmine;

namespace {

std::vector<float> random_floats(std::size_t n, std::mt19937& gen) {
  std::uniform_real_distribution<float> d(-1.0f, 1.0f);
  std::vector<float> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

}  // namespace

TEST_CASE("scalar table is always available and active table is one of the available ones") {
  const auto isas = simd::available();
  REQUIRE_FALSE(isas.empty());
  CHECK(isas.front() == simd::Isa::kScalar);
  CHECK(std::find(isas.begin(), isas.end(), simd::active().isa) != isas.end());
  CHECK(simd::table_for(simd::Isa::kScalar) != nullptr);
}

TEST_CASE("every vector kernel agrees with the scalar reference") {
  std::mt19937 gen(3);
  const auto& ref = *simd::table_for(simd::Isa::kScalar);
  for (auto isa : simd::available()) {
    const auto& t = *simd::table_for(isa);
    CAPTURE(simd::name(isa));
    for (std::size_t n : {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 32, 33, 63, 64, 100, 512, 1024, 1031}) {
      CAPTURE(n);
      const auto a = random_floats(n, gen), b = random_floats(n, gen);
      const float dr = ref.dot_f32(a.data(), b.data(), n);
      const float dv = t.dot_f32(a.data(), b.data(), n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(double(a[i]) * b[i]);
      CHECK(std::abs(dr - dv) <= 1e-5 * (mag + 1.0));
      CHECK(std::abs(ref.sqnorm_f32(a.data(), n) - t.sqnorm_f32(a.data(), n)) <= 1e-5 * (n + 1.0));

      const std::vector<double> ad(a.begin(), a.end()), bd(b.begin(), b.end());
      CHECK(std::abs(ref.dot_f64(ad.data(), bd.data(), n) - t.dot_f64(ad.data(), bd.data(), n)) <= 1e-12 * (mag + 1.0));

      auto s1 = a, s2 = a;
      ref.scale_f32(s1.data(), n, 0.37f);
      t.scale_f32(s2.data(), n, 0.37f);
      CHECK(s1 == s2);
    }
  }
}

TEST_CASE("dot over exact integers is exact in every table") {
  std::vector<float> a(37), b(37);
  double expect = 0.0;
  for (int i = 0; i < 37; ++i) {
    a[i] = float(i % 5);
    b[i] = float(3 - i % 7);
    expect += double(a[i]) * b[i];
  }
  for (auto isa : simd::available()) {
    CHECK(simd::table_for(isa)->dot_f32(a.data(), b.data(), a.size()) == float(expect));
  }
}
