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

#include "daq/quantizer.hpp"

#include <algorithm>
#include <cmath>

#include "daq/error.hpp"

namespace daq {
namespace {

void check_bits(int bits) {
  if (bits < kMinBits || bits > kMaxBits)
    fail(ErrorCode::kInvalidArgument, "bit-width must be in [1, 8], got " + std::to_string(bits));
}

ChannelStats stats_or_degenerate(std::span<const double> values) {
  ChannelStats s = channel_stats(values);
  if (s.stddev < kSigmaFloor) s.stddev = 0.0;
  return s;
}

}  // namespace

ChannelStats channel_stats(std::span<const double> values) {
  if (values.empty()) fail(ErrorCode::kInvalidArgument, "channel_stats needs at least one value");
  // Constant inputs report their value exactly rather than a rounded sum.
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
    return {values.front(), 0.0};
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / n)};
}

double shift_alpha(double mean, double stddev, int bits, const StepSizeTable& table, bool post_relu) {
  if (!post_relu || stddev < kSigmaFloor) return 0.0;
  const double half = std::ldexp(1.0, bits - 1);
  return std::max(half - mean / (stddev * table.step(bits)) - 1.0, 0.0);
}

CodeWindow code_window(int bits, double alpha) {
  const double half = std::ldexp(1.0, bits - 1);
  const auto lo = static_cast<std::int64_t>(std::floor(-half + alpha)) + 1;
  return {lo, lo + (std::int64_t{1} << bits) - 1};
}

std::int64_t round_half_away(double x) noexcept {
  return static_cast<std::int64_t>(std::round(x));  // std::round rounds halves away from zero
}

std::int64_t discretize(double standardized, int bits, double alpha) noexcept {
  const double half = std::ldexp(1.0, bits - 1);
  const double clamped = std::clamp(standardized, -half + alpha, half + alpha);
  const CodeWindow win = code_window(bits, alpha);
  return std::clamp(round_half_away(clamped), win.lo, win.hi);
}

std::vector<double> QuantizedFeature::means() const {
  std::vector<double> out;
  for (const auto& p : params) out.push_back(p.mean);
  return out;
}

std::vector<double> QuantizedFeature::stddevs() const {
  std::vector<double> out;
  for (const auto& p : params) out.push_back(p.stddev);
  return out;
}

QuantizedFeature quantize_feature(const Tensor& x, int bits, const StepSizeTable& table,
                                  bool post_relu) {
  check_bits(bits);
  if (x.ndim() != 3) fail(ErrorCode::kShapeMismatch, "feature map must be C x H x W");
  QuantizedFeature q;
  q.bits = bits;
  q.step = table.step(bits);
  q.post_relu = post_relu;
  q.channels = x.dim(0);
  q.height = x.dim(1);
  q.width = x.dim(2);
  q.codes.resize(x.size());
  q.params.resize(q.channels);

  const std::size_t plane = q.height * q.width;
  for (std::size_t c = 0; c < q.channels; ++c) {
    const auto values = x.data().subspan(c * plane, plane);
    const ChannelStats s = stats_or_degenerate(values);
    FeatureChannel& p = q.params[c];
    p.mean = s.mean;
    p.stddev = s.stddev;
    p.alpha = shift_alpha(s.mean, s.stddev, bits, table, post_relu);
    p.window = code_window(bits, p.alpha);
    auto* out = q.codes.data() + c * plane;
    if (s.stddev == 0.0) {
      std::fill(out, out + plane, 0);
      continue;
    }
    const double scale = s.stddev * q.step;
    for (std::size_t k = 0; k < plane; ++k)
      out[k] = static_cast<std::int32_t>(discretize((values[k] - s.mean) / scale, bits, p.alpha));
  }
  return q;
}

Tensor dequantize_feature(const QuantizedFeature& q) {
  std::vector<double> data(q.codes.size());
  const std::size_t plane = q.height * q.width;
  for (std::size_t c = 0; c < q.channels; ++c) {
    const auto& p = q.params[c];
    const double scale = p.stddev * q.step;
    for (std::size_t k = 0; k < plane; ++k)
      data[c * plane + k] = scale * q.codes[c * plane + k] + p.mean;
  }
  return Tensor(q.shape(), std::move(data));
}

QuantizedFeature with_channel_params(const QuantizedFeature& q, std::span<const double> means,
                                     std::span<const double> stddevs) {
  if (means.size() != q.channels || stddevs.size() != q.channels)
    fail(ErrorCode::kShapeMismatch, "parameter vectors must have one entry per channel");
  QuantizedFeature out = q;
  for (std::size_t c = 0; c < q.channels; ++c) {
    out.params[c].mean = means[c];
    out.params[c].stddev = stddevs[c];
  }
  return out;
}

std::string to_string(Granularity g) {
  switch (g) {
    case Granularity::kLayer: return "layer";
    case Granularity::kOutputChannel: return "output-channel";
    case Granularity::kInputChannel: return "input-channel";
    case Granularity::kKernel: return "kernel";
  }
  return "unknown";
}

Granularity parse_granularity(const std::string& text) {
  if (text == "layer") return Granularity::kLayer;
  if (text == "output-channel") return Granularity::kOutputChannel;
  if (text == "input-channel") return Granularity::kInputChannel;
  if (text == "kernel") return Granularity::kKernel;
  fail(ErrorCode::kInvalidArgument, "unknown granularity '" + text + "'");
}

std::size_t QuantizedWeight::group_of(std::size_t c, std::size_t i) const noexcept {
  switch (granularity) {
    case Granularity::kLayer: return 0;
    case Granularity::kOutputChannel: return i;
    case Granularity::kInputChannel: return c;
    case Granularity::kKernel: return c * out_channels + i;
  }
  return 0;
}

QuantizedWeight quantize_weight(const Tensor& w, int bits, const StepSizeTable& table,
                                Granularity granularity) {
  check_bits(bits);
  if (w.ndim() != 4 || w.dim(2) != w.dim(3))
    fail(ErrorCode::kShapeMismatch, "weight must be C x Cout x K x K, got " + shape_to_string(w.shape()));
  QuantizedWeight q;
  q.bits = bits;
  q.step = table.step(bits);
  q.granularity = granularity;
  q.in_channels = w.dim(0);
  q.out_channels = w.dim(1);
  q.kernel = w.dim(2);
  q.codes.resize(w.size());

  std::size_t groups = 1;
  switch (granularity) {
    case Granularity::kLayer: groups = 1; break;
    case Granularity::kOutputChannel: groups = q.out_channels; break;
    case Granularity::kInputChannel: groups = q.in_channels; break;
    case Granularity::kKernel: groups = q.in_channels * q.out_channels; break;
  }
  std::vector<double> sum_sq(groups, 0.0);
  std::vector<std::size_t> count(groups, 0);
  const std::size_t kk = q.kernel * q.kernel;
  for (std::size_t c = 0; c < q.in_channels; ++c)
    for (std::size_t i = 0; i < q.out_channels; ++i) {
      const std::size_t g = q.group_of(c, i);
      const std::size_t base = (c * q.out_channels + i) * kk;
      for (std::size_t k = 0; k < kk; ++k) sum_sq[g] += w[base + k] * w[base + k];
      count[g] += kk;
    }
  q.scales.resize(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    const double rms = std::sqrt(sum_sq[g] / static_cast<double>(count[g]));
    q.scales[g] = rms < kSigmaFloor ? 1.0 : rms;
  }
  for (std::size_t c = 0; c < q.in_channels; ++c)
    for (std::size_t i = 0; i < q.out_channels; ++i) {
      const std::size_t g = q.group_of(c, i);
      const std::size_t base = (c * q.out_channels + i) * kk;
      const double scale = q.scales[g] * q.step;
      const bool degenerate = std::sqrt(sum_sq[g] / static_cast<double>(count[g])) < kSigmaFloor;
      for (std::size_t k = 0; k < kk; ++k)
        q.codes[base + k] =
            degenerate ? 0 : static_cast<std::int32_t>(discretize(w[base + k] / scale, bits, 0.0));
    }
  return q;
}

Tensor dequantize_weight(const QuantizedWeight& q) {
  std::vector<double> data(q.codes.size());
  const std::size_t kk = q.kernel * q.kernel;
  for (std::size_t c = 0; c < q.in_channels; ++c)
    for (std::size_t i = 0; i < q.out_channels; ++i) {
      const double scale = q.scale(c, i) * q.step;
      const std::size_t base = (c * q.out_channels + i) * kk;
      for (std::size_t k = 0; k < kk; ++k) data[base + k] = scale * q.codes[base + k];
    }
  return Tensor(q.shape(), std::move(data));
}

std::vector<double> QQParams::means() const {
  std::vector<double> out(channels());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = mean(c);
  return out;
}

std::vector<double> QQParams::stddevs() const {
  std::vector<double> out(channels());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = stddev(c);
  return out;
}

QQParams quantize_qq(std::span<const double> means, std::span<const double> stddevs, int bits,
                     const StepSizeTable& table) {
  check_bits(bits);
  if (means.empty() || means.size() != stddevs.size())
    fail(ErrorCode::kShapeMismatch, "QQ needs equal-length, non-empty mean and stddev vectors");
  for (double s : stddevs)
    if (!(s >= 0.0)) fail(ErrorCode::kInvalidArgument, "channel stddevs must be >= 0");

  QQParams q;
  q.bits = bits;
  q.step = table.step(bits);
  const std::size_t channels = means.size();

  auto encode = [&](std::span<const double> values, double& center, double& spread,
                    std::vector<std::int32_t>& codes) {
    const ChannelStats s = stats_or_degenerate(values);
    center = s.mean;
    spread = s.stddev;
    codes.assign(channels, 0);
    if (spread == 0.0) return;
    for (std::size_t c = 0; c < channels; ++c)
      codes[c] = static_cast<std::int32_t>(discretize((values[c] - center) / (spread * q.step), bits, 0.0));
  };
  encode(means, q.mean_of_means, q.stddev_of_means, q.mean_codes);
  encode(stddevs, q.mean_of_stddevs, q.stddev_of_stddevs, q.stddev_codes);

  // Keep reconstructed stddevs of live channels at or above the floor by
  // stepping the code upward inside its window.
  const CodeWindow win = code_window(bits, 0.0);
  for (std::size_t c = 0; c < channels; ++c) {
    if (stddevs[c] < kSigmaFloor || q.stddev_of_stddevs == 0.0) continue;
    while (q.stddev(c) < kSigmaFloor && q.stddev_codes[c] < win.hi) ++q.stddev_codes[c];
  }
  return q;
}

}  // namespace daq
