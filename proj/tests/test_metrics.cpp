// Copyright 2026 The DAQ Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "daq/error.hpp"
#include "daq/metrics.hpp"
#include "oracles.hpp"

namespace daq {
namespace {

TEST(Compare, IdenticalIsCapped) {
  const Tensor a({3}, {1, 2, 3});
  const CompareReport r = compare(a, a);
  EXPECT_EQ(r.mse, 0.0);
  EXPECT_EQ(r.max_abs, 0.0);
  EXPECT_EQ(r.psnr_db, 300.0);
  EXPECT_EQ(r.peak, 255.0);
}

TEST(Compare, HandValues) {
  const CompareReport z = compare(Tensor({1}, {0.0}), Tensor({1}, {255.0}));
  EXPECT_EQ(z.mse, 255.0 * 255.0);
  EXPECT_NEAR(z.psnr_db, 0.0, 1e-12);

  const CompareReport r = compare(Tensor({2}, {0.0, 0.0}), Tensor({2}, {1.0, 3.0}), 255.0);
  EXPECT_EQ(r.mse, 5.0);
  EXPECT_EQ(r.max_abs, 3.0);
  EXPECT_NEAR(r.psnr_db, 10.0 * std::log10(65025.0 / 5.0), 1e-12);
  EXPECT_NEAR(r.psnr_db, 41.14, 5e-3);
}

TEST(Compare, Errors) {
  EXPECT_THROW(compare(Tensor({2}, {0, 0}), Tensor({1, 2}, {0, 0})), Error);
  EXPECT_THROW(compare(Tensor({1}, {0}), Tensor({1}, {0}), 0.0), Error);
}

TEST(CompareProperty, SymmetryScalingAndBounds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const Tensor a = testing::gaussian_tensor({4, 5}, rng, 0.0, 10.0);
    const Tensor b = testing::gaussian_tensor({4, 5}, rng, 0.0, 10.0);
    const CompareReport ab = compare(a, b), ba = compare(b, a);
    EXPECT_EQ(ab, ba);
    EXPECT_GE(ab.mse, 0.0);
    EXPECT_LE(ab.mse, ab.max_abs * ab.max_abs);
    EXPECT_EQ(compare(a, a).mse, 0.0);
    const double lambda = std::uniform_real_distribution<double>(0.1, 100.0)(rng);
    std::vector<double> la(a.data().begin(), a.data().end()), lb(b.data().begin(), b.data().end());
    for (auto& v : la) v *= lambda;
    for (auto& v : lb) v *= lambda;
    EXPECT_NEAR(compare(Tensor(a.shape(), la), Tensor(b.shape(), lb), 255.0 * lambda).psnr_db, ab.psnr_db, 1e-9);
  }
}

TEST(RelativeDeviation, Definition) {
  EXPECT_EQ(max_relative_deviation(Tensor({2}, {0, 0}), Tensor({2}, {0, 0})), 0.0);
  EXPECT_TRUE(std::isinf(max_relative_deviation(Tensor({1}, {1}), Tensor({1}, {0}))));
  EXPECT_DOUBLE_EQ(max_relative_deviation(Tensor({2}, {1, 4.5}), Tensor({2}, {1, 5})), 0.1);
}

TEST(Render, JsonAndText) {
  const CompareReport r = compare(Tensor({2}, {0.0, 0.0}), Tensor({2}, {1.0, 3.0}));
  const auto j = to_json(r);
  EXPECT_EQ(j["mse"], 5.0);
  EXPECT_EQ(j["max_abs"], 3.0);
  EXPECT_NE(render_text(r).find("mse      5\n"), std::string::npos);
}

}  // namespace
}  // namespace daq
