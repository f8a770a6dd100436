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
#include "daq/quantizer.hpp"
#include "daq/step_table.hpp"
#include "oracles.hpp"

namespace daq {
namespace {

const StepSizeTable& G() { return StepSizeTable::gaussian(); }

TEST(ChannelStats, HandValues) {
  const std::vector<double> constant{5, 5, 5, 5}, spread{-3, -1, 0, 1, 3}, pair{0, 2};
  EXPECT_EQ(channel_stats(constant).mean, 5.0);
  EXPECT_EQ(channel_stats(constant).stddev, 0.0);
  EXPECT_EQ(channel_stats(spread).mean, 0.0);
  EXPECT_EQ(channel_stats(spread).stddev, 2.0);
  EXPECT_EQ(channel_stats(pair).mean, 1.0);
  EXPECT_EQ(channel_stats(pair).stddev, 1.0);
}

TEST(ShiftAlpha, Branches) {
  EXPECT_EQ(shift_alpha(3.0, 0.2, 2, G(), false), 0.0);
  const double sd = 1.7, s2 = 0.996;
  EXPECT_NEAR(shift_alpha(2.0 * sd * s2, sd, 2, G(), true), 0.0, 1e-15);
  EXPECT_NEAR(shift_alpha(0.5 * sd * s2, sd, 2, G(), true), 0.5, 1e-15);
  EXPECT_EQ(shift_alpha(100.0, 1.0, 2, G(), true), 0.0);
}

TEST(CodeWindow, AlwaysTwoToTheNLevels) {
  EXPECT_EQ(code_window(2, 0.0).lo, -1);
  EXPECT_EQ(code_window(2, 0.0).hi, 2);
  EXPECT_EQ(code_window(2, 0.5).lo, -1);
  EXPECT_EQ(code_window(1, 0.3).lo, 0);
  EXPECT_EQ(code_window(1, 0.3).hi, 1);
  EXPECT_EQ(code_window(3, 2.0).lo, -1);
  for (int n = 1; n <= 8; ++n)
    for (double a : {0.0, 0.25, 0.5, 1.0, 3.75}) EXPECT_EQ(code_window(n, a).hi - code_window(n, a).lo + 1, 1 << n);
}

TEST(Discretize, HalvesRoundAwayFromZero) {
  EXPECT_EQ(round_half_away(0.5), 1);
  EXPECT_EQ(round_half_away(-0.5), -1);
  EXPECT_EQ(round_half_away(1.5), 2);
  EXPECT_EQ(round_half_away(-2.5), -3);
  EXPECT_EQ(discretize(-0.5, 4, 0.0), -1);
  EXPECT_EQ(discretize(7.5, 4, 0.0), 8);
  EXPECT_EQ(discretize(100.0, 4, 0.0), 8);
  EXPECT_EQ(discretize(-100.0, 4, 0.0), -7);
}

TEST(QuantizeFeature, HandExample) {
  const Tensor x({1, 1, 5}, {-3, -1, 0, 1, 3});
  const QuantizedFeature q = quantize_feature(x, 2, G(), false);
  EXPECT_EQ(q.codes, (std::vector<std::int32_t>{-1, -1, 0, 1, 2}));
  EXPECT_EQ(q.params[0].alpha, 0.0);
  const Tensor d = dequantize_feature(q);
  const std::vector<double> want{-1.992, -1.992, 0.0, 1.992, 3.984};
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(d[i], want[i], 1e-12);
}

TEST(QuantizeFeature, ConstantChannelReconstructsExactly) {
  for (int n : {1, 2, 3, 4, 8}) {
    const QuantizedFeature q = quantize_feature(Tensor::filled({2, 3, 3}, 7.3), n, G(), n % 2 == 0);
    for (auto c : q.codes) EXPECT_EQ(c, 0);
    EXPECT_EQ(q.params[0].stddev, 0.0);
    EXPECT_EQ(dequantize_feature(q), Tensor::filled({2, 3, 3}, 7.3));
  }
}

TEST(QuantizeFeature, MissingStepSizeIsAnError) {
  try {
    quantize_feature(Tensor({1, 1, 2}, {0, 1}), 6, G(), false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingStepSize);
  }
}

TEST(QuantizeFeature, AlphaIsZeroWithoutRelu) {
  std::mt19937_64 rng(3);
  const Tensor x = testing::feature_map(4, 5, 5, rng, true, false);
  for (const auto& p : quantize_feature(x, 2, G(), false).params) EXPECT_EQ(p.alpha, 0.0);
  for (const auto& p : quantize_feature(x, 2, G(), true).params) EXPECT_GE(p.alpha, 0.0);
}

// Grid law and window containment over random maps.
TEST(QuantizeFeatureProperty, CodesInWindowAndOnGrid) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const bool relu = seed % 3 == 0;
    const Tensor x = testing::feature_map(3, 4 + seed % 5, 3, rng, relu, seed % 7 == 0);
    const QuantizedFeature q = quantize_feature(x, n, G(), relu);
    const Tensor d = dequantize_feature(q);
    const std::size_t plane = q.height * q.width;
    for (std::size_t c = 0; c < q.channels; ++c) {
      const auto& p = q.params[c];
      for (std::size_t k = 0; k < plane; ++k) {
        const auto code = q.codes[c * plane + k];
        ASSERT_GE(code, p.window.lo);
        ASSERT_LE(code, p.window.hi);
        if (p.stddev > 0.0) {
          const double level = (d[c * plane + k] - p.mean) / (p.stddev * q.step);
          ASSERT_NEAR(level, code, 1e-9);
        }
      }
    }
  }
}

// Non-clipped values: the standardized value lies inside the rounding cells
// of the integer window, [lo - 1/2, hi + 1/2].
TEST(QuantizeFeatureProperty, RoundTripErrorWithinHalfStep) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::mt19937_64 rng(seed + 1000);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const bool relu = seed % 2 == 0;
    const Tensor x = testing::feature_map(2, 6, 6, rng, relu, false);
    const QuantizedFeature q = quantize_feature(x, n, G(), relu);
    const Tensor d = dequantize_feature(q);
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& p = q.params[c];
      const double cell = p.stddev * q.step;
      for (std::size_t k = 0; k < 36; ++k) {
        const double v = x[c * 36 + k];
        const double z = (v - p.mean) / cell;
        if (z < p.window.lo - 0.5 || z > p.window.hi + 0.5) continue;
        ASSERT_LE(std::fabs(v - d[c * 36 + k]), cell / 2 * (1 + 1e-12)) << "seed " << seed;
      }
    }
  }
}

// Rectified data with an active shift never falls below the rounding cell of
// the lowest code.
TEST(QuantizeFeatureProperty, ReluDataIsNeverLowClipped) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed + 77);
    const int n = 1 + static_cast<int>(seed % 4);
    const Tensor x = testing::feature_map(3, 5, 5, rng, true, false);
    const QuantizedFeature q = quantize_feature(x, n, G(), true);
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& p = q.params[c];
      if (p.alpha <= 0.0) continue;
      EXPECT_GE(-p.mean / (p.stddev * q.step), p.window.lo - 0.5);
    }
  }
}

TEST(QuantizeFeatureProperty, ReluMinimumLevelNearZero) {
  int active = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed + 5);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const Tensor x = testing::feature_map(4, 6, 5, rng, true, false);
    const QuantizedFeature q = quantize_feature(x, n, G(), true);
    for (const auto& p : q.params) {
      if (p.stddev == 0.0) continue;
      const double raw = std::ldexp(1.0, n - 1) - p.mean / (p.stddev * q.step) - 1.0;
      if (raw <= 0.0) continue;
      ++active;
      const double min_level = p.mean + p.stddev * q.step * p.window.lo;
      EXPECT_LE(std::fabs(min_level), p.stddev * q.step) << "seed " << seed;
    }
  }
  EXPECT_GT(active, 100);
}

TEST(QuantizeFeatureProperty, ScaleEquivarianceExactForPowersOfTwo) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const bool relu = seed % 2 == 1;
    const Tensor x = testing::feature_map(3, 4, 7, rng, relu, false);
    for (double lambda : {0.25, 2.0, 1024.0}) {
      std::vector<double> scaled(x.data().begin(), x.data().end());
      for (auto& v : scaled) v *= lambda;
      const QuantizedFeature a = quantize_feature(x, n, G(), relu);
      const QuantizedFeature b = quantize_feature(Tensor(x.shape(), scaled), n, G(), relu);
      ASSERT_EQ(a.codes, b.codes);
      const Tensor da = dequantize_feature(a), db = dequantize_feature(b);
      for (std::size_t i = 0; i < da.size(); ++i) ASSERT_EQ(db[i], lambda * da[i]);
    }
  }
}

TEST(QuantizeFeatureProperty, ScaleEquivarianceCodesForGeneralFactors) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed + 9);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const bool relu = seed % 2 == 0;
    const Tensor x = testing::feature_map(3, 5, 5, rng, relu, false);
    const double lambda = std::uniform_real_distribution<double>(0.01, 50.0)(rng);
    std::vector<double> scaled(x.data().begin(), x.data().end());
    for (auto& v : scaled) v *= lambda;
    const QuantizedFeature a = quantize_feature(x, n, G(), relu);
    const QuantizedFeature b = quantize_feature(Tensor(x.shape(), scaled), n, G(), relu);
    ASSERT_EQ(a.codes, b.codes);
    const Tensor da = dequantize_feature(a), db = dequantize_feature(b);
    for (std::size_t i = 0; i < da.size(); ++i) ASSERT_NEAR(db[i], lambda * da[i], 1e-12 * lambda * 10);
  }
}

// Dyadic data on a power-of-two plane keeps every statistic exact, so codes
// and reconstructions shift exactly.
TEST(QuantizeFeatureProperty, ShiftInvarianceExact) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> grid(-64, 64);
    std::vector<double> v(2 * 4 * 8);
    for (auto& e : v) e = grid(rng) / 16.0;
    const Tensor x({2, 4, 8}, v);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    for (double delta : {-3.5, 0.125, 40.0}) {
      std::vector<double> shifted = v;
      for (auto& e : shifted) e += delta;
      const QuantizedFeature a = quantize_feature(x, n, G(), false);
      const QuantizedFeature b = quantize_feature(Tensor(x.shape(), shifted), n, G(), false);
      ASSERT_EQ(a.codes, b.codes);
      const Tensor da = dequantize_feature(a), db = dequantize_feature(b);
      for (std::size_t i = 0; i < da.size(); ++i) ASSERT_NEAR(db[i] - da[i], delta, 1e-12 * (1 + std::fabs(delta)));
    }
  }
}

TEST(QuantizeFeatureProperty, ShiftInvarianceCodesOnRandomData) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed + 31);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const Tensor x = testing::feature_map(3, 5, 6, rng, false, false);
    const double delta = std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
    std::vector<double> shifted(x.data().begin(), x.data().end());
    for (auto& e : shifted) e += delta;
    ASSERT_EQ(quantize_feature(x, n, G(), false).codes,
              quantize_feature(Tensor(x.shape(), shifted), n, G(), false).codes);
  }
}

// Re-discretizing reconstructed values with the same channel parameters
// returns the same codes.
TEST(QuantizeFeatureProperty, GridIsAFixedPoint) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed + 400);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const bool relu = seed % 2 == 0;
    const QuantizedFeature q = quantize_feature(testing::feature_map(2, 5, 5, rng, relu, false), n, G(), relu);
    const Tensor d = dequantize_feature(q);
    for (std::size_t c = 0; c < 2; ++c) {
      const auto& p = q.params[c];
      if (p.stddev == 0.0) continue;  // degenerate channel: codes are all zero
      for (std::size_t k = 0; k < 25; ++k)
        ASSERT_EQ(discretize((d[c * 25 + k] - p.mean) / (p.stddev * q.step), n, p.alpha), q.codes[c * 25 + k]);
    }
  }
}

TEST(QuantizeWeight, HandExamples) {
  const QuantizedWeight z = quantize_weight(Tensor::zeros({2, 3, 3, 3}), 2, G(), Granularity::kLayer);
  for (auto c : z.codes) EXPECT_EQ(c, 0);
  EXPECT_EQ(z.scales[0], 1.0);
  EXPECT_EQ(dequantize_weight(z), Tensor::zeros({2, 3, 3, 3}));

  const QuantizedWeight one = quantize_weight(Tensor({1, 1, 1, 1}, {0.37}), 2, G(), Granularity::kLayer);
  EXPECT_EQ(one.codes[0], 1);
  EXPECT_DOUBLE_EQ(one.scales[0], 0.37);
  EXPECT_DOUBLE_EQ(dequantize_weight(one)[0], 0.37 * 0.996);
}

TEST(QuantizeWeight, GroupCounts) {
  std::mt19937_64 rng(1);
  const Tensor w = testing::gaussian_tensor({3, 5, 3, 3}, rng);
  EXPECT_EQ(quantize_weight(w, 2, G(), Granularity::kLayer).scales.size(), 1u);
  EXPECT_EQ(quantize_weight(w, 2, G(), Granularity::kOutputChannel).scales.size(), 5u);
  EXPECT_EQ(quantize_weight(w, 2, G(), Granularity::kInputChannel).scales.size(), 3u);
  EXPECT_EQ(quantize_weight(w, 2, G(), Granularity::kKernel).scales.size(), 15u);
}

TEST(QuantizeWeight, KernelEqualsLayerForSingleChannelPair) {
  std::mt19937_64 rng(2);
  const Tensor w = testing::gaussian_tensor({1, 1, 3, 3}, rng);
  const auto a = quantize_weight(w, 3, G(), Granularity::kLayer);
  const auto b = quantize_weight(w, 3, G(), Granularity::kKernel);
  EXPECT_EQ(a.codes, b.codes);
  EXPECT_EQ(a.scales, b.scales);
}

TEST(QuantizeWeightProperty, CodesInSymmetricWindow) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    const auto q = quantize_weight(testing::gaussian_tensor({3, 4, 3, 3}, rng), n, G(),
                                   static_cast<Granularity>(seed % 4));
    for (auto c : q.codes) {
      ASSERT_GT(c, -(1 << (n - 1)));
      ASSERT_LE(c, 1 << (n - 1));
    }
    for (double s : q.scales) ASSERT_GT(s, 0.0);
  }
}

double weight_sse(const Tensor& w, Granularity g, int n) {
  const Tensor d = dequantize_weight(quantize_weight(w, n, G(), g));
  double e = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) e += (w[i] - d[i]) * (w[i] - d[i]);
  return e;
}

Tensor grouped_weights(std::uint64_t seed, double log_spread) {
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> spread(0.0, log_spread);
  std::normal_distribution<double> unit;
  std::vector<double> v;
  for (int g = 0; g < 16; ++g) {
    const double s = spread(rng);
    for (int k = 0; k < 9; ++k) v.push_back(s * unit(rng));
  }
  return Tensor({4, 4, 3, 3}, v);
}

// Averaged over tensors whose groups have their own spread, finer groups
// reconstruct strictly better.
TEST(QuantizeWeightProperty, FinerGranularityReducesMeanError) {
  for (int n : {1, 2, 3, 4, 8}) {
    double kernel = 0.0, input = 0.0, layer = 0.0;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
      const Tensor w = grouped_weights(seed, 1.0);
      kernel += weight_sse(w, Granularity::kKernel, n);
      input += weight_sse(w, Granularity::kInputChannel, n);
      layer += weight_sse(w, Granularity::kLayer, n);
    }
    EXPECT_LT(kernel, input) << n;
    EXPECT_LT(input, layer) << n;
  }
}

// Per tensor the ordering is not guaranteed: with RMS scales and no clipping
// the error is about s^2/12 times the total energy for every grouping, so
// finer groups lose on some draws.
TEST(QuantizeWeightProperty, FinerGranularityIsNotMonotonePerTensor) {
  int reversals = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Tensor w = grouped_weights(seed, 0.0);
    reversals += weight_sse(w, Granularity::kKernel, 8) > weight_sse(w, Granularity::kInputChannel, 8);
  }
  EXPECT_GT(reversals, 0);
}

TEST(QuantizeQq, HandExample) {
  const std::vector<double> mu{-2, 0, 2}, sd{1, 1, 1};
  const QQParams q = quantize_qq(mu, sd, 4, G());
  EXPECT_EQ(q.mean_codes, (std::vector<std::int32_t>{-4, 0, 4}));
  EXPECT_NEAR(q.stddev_of_means, std::sqrt(8.0 / 3.0), 1e-15);
  EXPECT_NEAR(q.mean(0), -2.188, 5e-4);
  EXPECT_NEAR(q.mean(2), 2.188, 5e-4);
  EXPECT_EQ(q.mean(1), 0.0);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(q.stddev(c), 1.0);
}

TEST(QuantizeQq, SingleChannelIsExact) {
  const std::vector<double> mu{3.0}, sd{0.7};
  const QQParams q = quantize_qq(mu, sd, 4, G());
  EXPECT_EQ(q.stddev_of_means, 0.0);
  EXPECT_EQ(q.stddev_of_stddevs, 0.0);
  EXPECT_EQ(q.mean_codes[0], 0);
  EXPECT_EQ(q.stddev_codes[0], 0);
  EXPECT_EQ(q.mean(0), 3.0);
  EXPECT_EQ(q.stddev(0), 0.7);
}

TEST(QuantizeQqProperty, ReconstructionBoundsAndFloor) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t C = 2 + seed % 30;
    const int m = std::vector<int>{1, 2, 3, 4, 8}[seed % 5];
    std::vector<double> mu(C), sd(C);
    std::normal_distribution<double> nm(0.0, 3.0);
    std::exponential_distribution<double> ex(1.0);
    for (std::size_t c = 0; c < C; ++c) {
      mu[c] = nm(rng);
      sd[c] = ex(rng) * 1e-3;
    }
    const QQParams q = quantize_qq(mu, sd, m, G());
    const double cell = q.stddev_of_means * q.step;
    const CodeWindow win = code_window(m, 0.0);
    for (std::size_t c = 0; c < C; ++c) {
      ASSERT_GE(q.stddev(c), kSigmaFloor);
      const double z = (mu[c] - q.mean_of_means) / cell;
      if (z >= win.lo - 0.5 && z <= win.hi + 0.5) ASSERT_LE(std::fabs(mu[c] - q.mean(c)), cell / 2 * (1 + 1e-12));
    }
  }
}

TEST(QuantizeQq, RejectsMismatchedVectors) {
  const std::vector<double> a{1, 2}, b{1};
  EXPECT_THROW(quantize_qq(a, b, 4, G()), Error);
  const std::vector<double> neg{-1, 1};
  EXPECT_THROW(quantize_qq(a, neg, 4, G()), Error);
}

TEST(Granularity, NamesRoundTrip) {
  for (auto g : {Granularity::kLayer, Granularity::kOutputChannel, Granularity::kInputChannel, Granularity::kKernel})
    EXPECT_EQ(parse_granularity(to_string(g)), g);
  EXPECT_THROW(parse_granularity("channel"), Error);
}

}  // namespace
}  // namespace daq
