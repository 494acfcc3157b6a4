// Copyright 2026 The rewardlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "rewardlab/common/digest.h"
#include "rewardlab/common/error.h"
#include "rewardlab/common/rng.h"

namespace rewardlab {
namespace {

TEST(DigestTest, KnownSha256Vectors) {
  EXPECT_EQ(Sha256Hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Sha256Hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(DigestTest, Base64RoundTripAndVectors) {
  const std::string text = "foobar";
  std::vector<uint8_t> bytes(text.begin(), text.end());
  EXPECT_EQ(Base64Encode(std::span<const uint8_t>(bytes.data(), 1)), "Zg==");
  EXPECT_EQ(Base64Encode(std::span<const uint8_t>(bytes.data(), 2)), "Zm8=");
  EXPECT_EQ(Base64Encode(bytes), "Zm9vYmFy");
  Rng rng(1);
  for (int n = 0; n < 64; ++n) {
    std::vector<uint8_t> b(n);
    for (auto& x : b) x = static_cast<uint8_t>(rng.UniformInt(256));
    EXPECT_EQ(Base64Decode(Base64Encode(b)), b);
  }
}

TEST(DigestTest, Base64RejectsGarbage) {
  for (const char* bad : {"Zg=", "Z!==", "Zm9vY", "===="}) {
    try {
      Base64Decode(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInput);
    }
  }
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, UniformInRange) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.UniformInt(7), 7u);
  }
}

TEST(RngTest, UniformIntIsRoughlyUniform) {
  Rng rng(4);
  std::vector<int> counts(5, 0);
  const int n = 50000;
  for (int i = 0; i < n; ++i) counts[rng.UniformInt(5)]++;
  for (int c : counts) EXPECT_NEAR(c, n / 5, 500);
}

TEST(RngTest, NormalMoments) {
  Rng rng(5);
  double sum = 0, sq = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.02);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, CategoricalNeverPicksZeroWeight) {
  Rng rng(6);
  const std::vector<double> w = {0.0, 2.0, 0.0, 1.0};
  for (int i = 0; i < 1000; ++i) {
    const size_t k = rng.Categorical(w);
    EXPECT_TRUE(k == 1 || k == 3);
  }
}

TEST(RngTest, DerivedSeedsDiffer) {
  std::set<uint64_t> seen;
  for (uint64_t tag = 0; tag < 100; ++tag) seen.insert(DeriveSeed(1, tag));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(DeriveSeed(9, 3), DeriveSeed(9, 3));
}

TEST(ErrorTest, CarriesCodeAndName) {
  try {
    Fail(ErrorCode::kTimeout, "late");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimeout);
    EXPECT_NE(std::string(e.what()).find("late"), std::string::npos);
    EXPECT_FALSE(ErrorCodeName(e.code()).empty());
  }
  EXPECT_TRUE(Error(ErrorCode::kConfig, "x").IsUsageError());
  EXPECT_FALSE(Error(ErrorCode::kConnectionLost, "x").IsUsageError());
}

}  // namespace
}  // namespace rewardlab
