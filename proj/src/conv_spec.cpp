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

#include "daq/conv_spec.hpp"

#include "daq/error.hpp"
#include "daq/step_table.hpp"

namespace daq {

std::string to_string(Padding p) { return p == Padding::kValid ? "valid" : "same"; }

Padding parse_padding(const std::string& text) {
  if (text == "same" || text == "same-zero") return Padding::kSameZero;
  if (text == "valid") return Padding::kValid;
  fail(ErrorCode::kInvalidArgument, "unknown padding '" + text + "'");
}

void ConvSpec::validate() const {
  if (in_channels == 0 || out_channels == 0 || kernel == 0 || height == 0 || width == 0)
    fail(ErrorCode::kInvalidArgument, "convolution dimensions must be positive");
  if (padding == Padding::kValid && (kernel > height || kernel > width))
    fail(ErrorCode::kShapeMismatch, "valid padding needs K <= H and K <= W");
  if (bits < kMinBits || bits > kMaxBits || qq_bits < kMinBits || qq_bits > kMaxBits)
    fail(ErrorCode::kInvalidArgument, "bit-widths must be in [1, 8]");
}

ConvSpec ConvSpec::table_s1() {
  ConvSpec s;
  s.in_channels = 256;
  s.out_channels = 256;
  s.kernel = 3;
  s.height = 480;
  s.width = 270;
  s.padding = Padding::kSameZero;
  s.bits = 2;
  s.qq_bits = 4;
  return s;
}

}  // namespace daq
