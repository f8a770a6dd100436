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

#include <span>
#include <string>
#include <vector>

#include "daq/step_table.hpp"

namespace daq {

// Zero-mean, unit-variance source densities for deriving step-size tables.
enum class UnitDistribution { kGaussian, kLaplace, kUniform };

std::string to_string(UnitDistribution dist);
UnitDistribution parse_unit_distribution(const std::string& name);

// The symmetric 2^n-level uniform (mid-rise) quantizer with spacing `step`:
// levels at (k + 1/2) * step for k = -2^{n-1} .. 2^{n-1}-1, saturating
// outside. This is the quantizer whose MSE-optimal spacing defines s(n).
double uniform_quantize(double x, int bits, double step) noexcept;

// Closed-form mean-squared error of that quantizer against the density.
double uniform_quantizer_mse(UnitDistribution dist, int bits, double step);

// Empirical MSE over samples.
double uniform_quantizer_mse(std::span<const double> samples, int bits, double step) noexcept;

// Brute-force search: a log-spaced scan over (1e-3, 4] followed by golden
// section refinement around the best grid point.
double optimal_uniform_step(UnitDistribution dist, int bits);

StepSizeTable derive_step_table(UnitDistribution dist, std::span<const int> bit_widths);

}  // namespace daq
