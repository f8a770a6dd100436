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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "daq/step_table.hpp"
#include "daq/tensor.hpp"

namespace daq {

// Channels (and weight groups) whose standard deviation falls below this
// are degenerate: their codes are all zero and they reconstruct their mean.
inline constexpr double kSigmaFloor = 1e-8;

struct ChannelStats {
  double mean = 0.0;
  double stddev = 0.0;  // population (1/N)
};

ChannelStats channel_stats(std::span<const double> values);

// Shift applied to the discretizer window of a post-ReLU channel so that the
// lowest level lands at (or just below) zero. Zero for other channels.
double shift_alpha(double mean, double stddev, int bits, const StepSizeTable& table, bool post_relu);

// Integer code window [lo, hi] holding exactly 2^bits levels for a given
// real shift: lo = floor(-2^{bits-1} + alpha) + 1.
struct CodeWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};
CodeWindow code_window(int bits, double alpha);

// Round half away from zero.
std::int64_t round_half_away(double x) noexcept;

// Clamp the standardized value to (-2^{n-1}+alpha, 2^{n-1}+alpha], round it,
// and pin the integer into the 2^n-level window.
std::int64_t discretize(double standardized, int bits, double alpha) noexcept;

struct FeatureChannel {
  double mean = 0.0;
  double stddev = 0.0;  // stored as 0 for degenerate channels
  double alpha = 0.0;
  CodeWindow window;
};

struct QuantizedFeature {
  int bits = 0;
  double step = 0.0;
  bool post_relu = false;
  std::uint64_t channels = 0, height = 0, width = 0;
  std::vector<std::int32_t> codes;  // C x H x W, row-major
  std::vector<FeatureChannel> params;

  std::int32_t code(std::size_t c, std::size_t h, std::size_t w) const noexcept {
    return codes[(c * height + h) * width + w];
  }
  Shape shape() const { return {channels, height, width}; }
  std::vector<double> means() const;
  std::vector<double> stddevs() const;
};

QuantizedFeature quantize_feature(const Tensor& x, int bits, const StepSizeTable& table,
                                  bool post_relu);
Tensor dequantize_feature(const QuantizedFeature& q);

// Copy of `q` whose codes are kept but whose per-channel mean/stddev are
// replaced, e.g. by QQ reconstructions.
QuantizedFeature with_channel_params(const QuantizedFeature& q, std::span<const double> means,
                                     std::span<const double> stddevs);

enum class Granularity { kLayer, kOutputChannel, kInputChannel, kKernel };

std::string to_string(Granularity g);
Granularity parse_granularity(const std::string& text);

/// Weight codes for a C x Cout x K x K filter bank. Each group shares one
/// RMS scale; the code window is (-2^{n-1}, 2^{n-1}].
struct QuantizedWeight {
  int bits = 0;
  double step = 0.0;
  Granularity granularity = Granularity::kLayer;
  std::uint64_t in_channels = 0, out_channels = 0, kernel = 0;
  std::vector<std::int32_t> codes;
  std::vector<double> scales;

  std::int32_t code(std::size_t c, std::size_t i, std::size_t u, std::size_t v) const noexcept {
    return codes[((c * out_channels + i) * kernel + u) * kernel + v];
  }
  std::size_t group_of(std::size_t c, std::size_t i) const noexcept;
  double scale(std::size_t c, std::size_t i) const noexcept { return scales[group_of(c, i)]; }
  Shape shape() const { return {in_channels, out_channels, kernel, kernel}; }
};

QuantizedWeight quantize_weight(const Tensor& w, int bits, const StepSizeTable& table,
                                Granularity granularity);
Tensor dequantize_weight(const QuantizedWeight& q);

/// m-bit codes for the per-channel mean and stddev vectors plus the four
/// global statistics that de-standardize them.
struct QQParams {
  int bits = 0;
  double step = 0.0;
  std::vector<std::int32_t> mean_codes;
  std::vector<std::int32_t> stddev_codes;
  double mean_of_means = 0.0;
  double stddev_of_means = 0.0;
  double mean_of_stddevs = 0.0;
  double stddev_of_stddevs = 0.0;

  std::size_t channels() const noexcept { return mean_codes.size(); }
  double mean(std::size_t c) const noexcept {
    return stddev_of_means * step * mean_codes[c] + mean_of_means;
  }
  double stddev(std::size_t c) const noexcept {
    return stddev_of_stddevs * step * stddev_codes[c] + mean_of_stddevs;
  }
  std::vector<double> means() const;
  std::vector<double> stddevs() const;
};

QQParams quantize_qq(std::span<const double> means, std::span<const double> stddevs, int bits,
                     const StepSizeTable& table);

}  // namespace daq
