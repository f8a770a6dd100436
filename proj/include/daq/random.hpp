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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>

#include "daq/tensor.hpp"

namespace daq {

/// xoshiro256** 1.0 (Blackman & Vigna), seeded by expanding the 64-bit seed
/// with splitmix64. The algorithm and seeding are part of the tensor
/// generator's contract and must not change.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  // Uniform on [0, 1) with 53 random bits.
  double next_unit() noexcept;
  // Standard normal via the Marsaglia polar method (cached pair).
  double next_gaussian() noexcept;

 private:
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Gaussian {
  double mean = 0.0;
  double stddev = 1.0;
};
struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};
struct Constant {
  double value = 0.0;
};

using Distribution = std::variant<Gaussian, Uniform, Constant>;

// "gaussian", "gaussian:MEAN,SD", "uniform:LO,HI", "constant:V".
Distribution parse_distribution(const std::string& text);
std::string to_string(const Distribution& dist);

Tensor generate(const Shape& shape, std::uint64_t seed, const Distribution& dist);

}  // namespace daq
