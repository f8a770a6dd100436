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

#include <string>

#include <nlohmann/json.hpp>

#include "daq/tensor.hpp"

namespace daq {

inline constexpr double kPsnrCapDb = 300.0;
inline constexpr double kDefaultPeak = 255.0;

struct CompareReport {
  double mse = 0.0;
  double psnr_db = kPsnrCapDb;  // capped when mse < 1e-30
  double max_abs = 0.0;
  double peak = kDefaultPeak;

  friend bool operator==(const CompareReport&, const CompareReport&) = default;
};

// Throws kShapeMismatch on differing shapes, kInvalidArgument for peak <= 0.
CompareReport compare(const Tensor& a, const Tensor& b, double peak = kDefaultPeak);

// max|a-b| / max|b|; 0 when both are identically zero, +inf when only b is.
double max_relative_deviation(const Tensor& a, const Tensor& b);

double psnr_db(double mse, double peak);

nlohmann::ordered_json to_json(const CompareReport& report);
std::string render_text(const CompareReport& report);

}  // namespace daq
