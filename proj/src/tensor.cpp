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

#include "daq/tensor.hpp"

#include <cmath>
#include <limits>

#include "daq/error.hpp"

namespace daq {

std::uint64_t checked_numel(std::span<const std::uint64_t> shape) {
  if (shape.empty()) fail(ErrorCode::kInvalidArgument, "shape must have at least one dimension");
  std::uint64_t n = 1;
  for (auto d : shape) {
    if (d == 0) fail(ErrorCode::kInvalidArgument, "shape dimensions must be positive");
    if (n > std::numeric_limits<std::uint64_t>::max() / d)
      fail(ErrorCode::kShapeOverflow, "element count overflows 64 bits: " + shape_to_string(shape));
    n *= d;
  }
  return n;
}

std::string shape_to_string(std::span<const std::uint64_t> shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (checked_numel(shape_) != data_.size())
    fail(ErrorCode::kShapeMismatch, "shape " + shape_to_string(shape_) + " does not match " +
                                        std::to_string(data_.size()) + " values");
  for (double v : data_)
    if (!std::isfinite(v)) fail(ErrorCode::kNonFinite, "tensor values must be finite");
}

Tensor Tensor::filled(Shape shape, double value) {
  const auto n = checked_numel(shape);
  return Tensor(std::move(shape), std::vector<double>(n, value));
}

}  // namespace daq
