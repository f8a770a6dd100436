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
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>

#include "daq/error.hpp"
#include "daq/random.hpp"
#include "daq/tensor.hpp"
#include "daq/tensor_io.hpp"

namespace daq {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInvalidArgument;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("daq_test_" + name);
}

TEST(Tensor, ValidatesCountAndFiniteness) {
  EXPECT_EQ(code_of([] { Tensor({2, 2}, {1.0, 2.0, 3.0}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([] { Tensor({1}, {std::nan("")}); }), ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([] { Tensor({1}, {INFINITY}); }), ErrorCode::kNonFinite);
  EXPECT_EQ(code_of([] { Tensor({0}, {}); }), ErrorCode::kInvalidArgument);
}

TEST(Tensor, ShapeProductOverflowIsDetected) {
  const Shape huge{1ULL << 40, 1ULL << 40};
  EXPECT_EQ(code_of([&] { checked_numel(huge); }), ErrorCode::kShapeOverflow);
}

TEST(Tensor, RowMajorIndexing) {
  const Tensor t({2, 3, 4}, [] {
    std::vector<double> v(24);
    std::iota(v.begin(), v.end(), 0.0);
    return v;
  }());
  EXPECT_EQ(t.at(1, 2, 3), 23.0);
  EXPECT_EQ(t.at(1, 0, 1), 13.0);
  const Tensor w({2, 2, 2, 2}, std::vector<double>(t.data().begin(), t.data().begin() + 16));
  EXPECT_EQ(w.at(1, 0, 1, 1), 11.0);
}

TEST(TensorIo, Fp64LayoutMatchesFormat) {
  const auto bytes = encode_tensor(Tensor({2}, {1.0, 2.0}), Dtype::kFloat64);
  ASSERT_EQ(bytes.size(), 4u + 4 + 1 + 1 + 8 + 16);
  EXPECT_EQ(std::memcmp(bytes.data(), "DAQT", 4), 0);
  EXPECT_EQ(bytes[4], 1);  // version, little-endian
  EXPECT_EQ(bytes[5] | bytes[6] | bytes[7], 0);
  EXPECT_EQ(bytes[8], 1);  // FP64
  EXPECT_EQ(bytes[9], 1);  // ndim
  EXPECT_EQ(bytes[10], 2);
  double second = 0.0;
  std::memcpy(&second, bytes.data() + 18 + 8, 8);
  EXPECT_EQ(second, 2.0);
}

TEST(TensorIo, SingleZeroRoundTrip) {
  const auto path = temp_path("zero.daqt");
  write_tensor(Tensor({1}, {0.0}), path);
  EXPECT_EQ(read_tensor(path), Tensor({1}, {0.0}));
}

TEST(TensorIo, Fp64RoundTripIsBitExact) {
  const Tensor t = generate({3, 5, 7}, 11, Gaussian{0.3, 4.0});
  const auto bytes = encode_tensor(t, Dtype::kFloat64);
  const Tensor back = decode_tensor(bytes);
  ASSERT_EQ(back.shape(), t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::uint64_t a, b;
    std::memcpy(&a, &t.data()[i], 8);
    std::memcpy(&b, &back.data()[i], 8);
    EXPECT_EQ(a, b);
  }
  EXPECT_EQ(encode_tensor(back, Dtype::kFloat64), bytes);
}

TEST(TensorIo, RewriteIsByteIdenticalForEveryDtype) {
  for (Dtype d : {Dtype::kFloat32, Dtype::kFloat64, Dtype::kInt32}) {
    const Tensor t = generate({4, 3}, 5, Uniform{-1000.0, 1000.0});
    std::vector<double> ints;
    for (double v : t.data()) ints.push_back(std::round(v));
    const auto original = encode_tensor(d == Dtype::kInt32 ? Tensor(t.shape(), ints) : t, d);
    EXPECT_EQ(encode_tensor(decode_tensor(original), d), original) << static_cast<int>(d);
    EXPECT_EQ(peek_dtype(original), d);
  }
}

TEST(TensorIo, Fp32NarrowsToNearestEven) {
  const auto bytes = encode_tensor(Tensor({1}, {0.1}), Dtype::kFloat32);
  const Tensor back = decode_tensor(bytes);
  EXPECT_EQ(back[0], static_cast<double>(0.1f));
  EXPECT_NE(back[0], 0.1);
  // Halfway between 1 and the next float: ties to the even mantissa (1.0).
  const double tie = 1.0 + std::ldexp(1.0, -24);
  EXPECT_EQ(decode_tensor(encode_tensor(Tensor({1}, {tie}), Dtype::kFloat32))[0], 1.0);
}

TEST(TensorIo, Fp32OverflowIsRejected) {
  EXPECT_EQ(code_of([] { encode_tensor(Tensor({1}, {1e300}), Dtype::kFloat32); }), ErrorCode::kOverflow);
}

TEST(TensorIo, Int32RequiresIntegralValues) {
  EXPECT_EQ(code_of([] { encode_tensor(Tensor({1}, {0.5}), Dtype::kInt32); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { encode_tensor(Tensor({1}, {3e9}), Dtype::kInt32); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(decode_tensor(encode_tensor(Tensor({2}, {-7.0, 2147483647.0}), Dtype::kInt32)),
            Tensor({2}, {-7.0, 2147483647.0}));
}

TEST(TensorIo, DistinctErrorsForCorruptFiles) {
  const auto good = encode_tensor(Tensor({2}, {1.0, 2.0}), Dtype::kFloat64);

  auto bad_magic = good;
  bad_magic[3] = 'X';
  EXPECT_EQ(code_of([&] { decode_tensor(bad_magic); }), ErrorCode::kBadMagic);

  auto version = good;
  version[4] = 9;
  EXPECT_EQ(code_of([&] { decode_tensor(version); }), ErrorCode::kUnsupportedVersion);

  auto dtype = good;
  dtype[8] = 7;
  EXPECT_EQ(code_of([&] { decode_tensor(dtype); }), ErrorCode::kUnknownDtype);

  auto truncated = good;
  truncated.pop_back();
  EXPECT_EQ(code_of([&] { decode_tensor(truncated); }), ErrorCode::kTruncated);
  EXPECT_EQ(code_of([&] { decode_tensor(std::span(good).first(2)); }), ErrorCode::kTruncated);
  EXPECT_EQ(code_of([&] { decode_tensor(std::span(good).first(12)); }), ErrorCode::kTruncated);

  auto trailing = good;
  trailing.push_back(0);
  EXPECT_EQ(code_of([&] { decode_tensor(trailing); }), ErrorCode::kTrailingData);

  auto overflow = encode_tensor(Tensor({1, 1}, {1.0}), Dtype::kFloat64);
  overflow[10 + 7] = 0x40;   // dim0 = 2^62
  overflow[18 + 7] = 0x40;   // dim1 = 2^62
  overflow[10] = 0;
  overflow[18] = 0;
  EXPECT_EQ(code_of([&] { decode_tensor(overflow); }), ErrorCode::kShapeOverflow);

  auto nan_payload = good;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan_payload.data() + 18, &nan, 8);
  EXPECT_EQ(code_of([&] { decode_tensor(nan_payload); }), ErrorCode::kNonFinite);
}

TEST(TensorIo, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_tensor("/nonexistent/dir/x.daqt"); }), ErrorCode::kIo);
}

TEST(TensorIo, Fnv1aKnownVectors) {
  const std::string a = "a";
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64(std::span(reinterpret_cast<const std::uint8_t*>(a.data()), 1)), 0xaf63dc4c8601ec8cULL);
}

TEST(Random, XoshiroMatchesIndependentReference) {
  // splitmix64-seeded xoshiro256** for seed 7, computed outside the library.
  Xoshiro256 rng(7);
  EXPECT_EQ(rng.next(), 0xb358faf74ef9765aULL);
  EXPECT_EQ(rng.next(), 0x475c3d964f482cd2ULL);
  EXPECT_EQ(rng.next(), 0xd6f1d349952c7996ULL);
}

TEST(Random, ConstantFills) {
  EXPECT_EQ(generate({2, 2}, 0, Constant{3.0}), Tensor::filled({2, 2}, 3.0));
  EXPECT_EQ(generate({1, 1, 1}, 0, parse_distribution("constant:3")), Tensor({1, 1, 1}, {3.0}));
}

TEST(Random, SameSeedSameTensor) {
  EXPECT_EQ(generate({5, 6}, 42, Gaussian{}), generate({5, 6}, 42, Gaussian{}));
  EXPECT_NE(generate({5, 6}, 42, Gaussian{}), generate({5, 6}, 43, Gaussian{}));
}

TEST(Random, GaussianMoments) {
  const Tensor t = generate({1000000}, 1, Gaussian{0.0, 1.0});
  double sum = 0.0, sq = 0.0;
  for (double v : t.data()) sum += v;
  const double mean = sum / 1e6;
  for (double v : t.data()) sq += (v - mean) * (v - mean);
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(std::sqrt(sq / 1e6), 1.0, 0.01);
}

TEST(Random, UniformStaysInRange) {
  const Tensor t = generate({10000}, 3, Uniform{-2.0, 5.0});
  for (double v : t.data()) {
    EXPECT_GE(v, -2.0);
    EXPECT_LT(v, 5.0);
  }
}

TEST(Random, ParseRejectsBadSpecs) {
  EXPECT_EQ(code_of([] { parse_distribution("gaussian:0,-1"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { parse_distribution("uniform:3,1"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { parse_distribution("cauchy"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { parse_distribution("constant:x"); }), ErrorCode::kParse);
  EXPECT_EQ(to_string(parse_distribution("uniform:-1,2")), "uniform:-1,2");
}

}  // namespace
}  // namespace daq
