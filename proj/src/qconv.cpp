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

#include "daq/qconv.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>

#include "daq/error.hpp"
#include "daq/parallel.hpp"

namespace daq {

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::kReference: return "reference";
    case Pipeline::kElementwise: return "elementwise";
    case Pipeline::kChannelwise: return "channelwise";
    case Pipeline::kQq: return "qq";
  }
  return "unknown";
}

Pipeline parse_pipeline(const std::string& text) {
  if (text == "reference") return Pipeline::kReference;
  if (text == "elementwise") return Pipeline::kElementwise;
  if (text == "channelwise") return Pipeline::kChannelwise;
  if (text == "qq") return Pipeline::kQq;
  fail(ErrorCode::kInvalidArgument, "unknown pipeline '" + text + "'");
}

ConvSpec spec_for(const Tensor& x, const Tensor& w, Padding padding, int bits, int qq_bits) {
  if (x.ndim() != 3) fail(ErrorCode::kShapeMismatch, "feature map must be C x H x W, got " + shape_to_string(x.shape()));
  if (w.ndim() != 4 || w.dim(2) != w.dim(3))
    fail(ErrorCode::kShapeMismatch, "weight must be C x Cout x K x K, got " + shape_to_string(w.shape()));
  if (w.dim(0) != x.dim(0))
    fail(ErrorCode::kShapeMismatch, "weight has " + std::to_string(w.dim(0)) + " input channels, feature map has " +
                                        std::to_string(x.dim(0)));
  ConvSpec s;
  s.in_channels = x.dim(0);
  s.height = x.dim(1);
  s.width = x.dim(2);
  s.out_channels = w.dim(1);
  s.kernel = w.dim(2);
  s.padding = padding;
  s.bits = bits;
  s.qq_bits = qq_bits;
  s.validate();
  return s;
}

ConvSpec spec_for(const QuantizedFeature& qx, const QuantizedWeight& qw, Padding padding, int qq_bits) {
  if (qx.bits != qw.bits)
    fail(ErrorCode::kInvalidArgument, "feature and weight bit-widths differ");
  if (qw.in_channels != qx.channels)
    fail(ErrorCode::kShapeMismatch, "weight input channels do not match the feature map");
  ConvSpec s;
  s.in_channels = qx.channels;
  s.height = qx.height;
  s.width = qx.width;
  s.out_channels = qw.out_channels;
  s.kernel = qw.kernel;
  s.padding = padding;
  s.bits = qx.bits;
  s.qq_bits = qq_bits;
  s.validate();
  return s;
}

namespace {

void check_operands(const QuantizedFeature& qx, const QuantizedWeight& qw, const ConvSpec& spec) {
  spec.validate();
  if (qx.channels != spec.in_channels || qx.height != spec.height || qx.width != spec.width)
    fail(ErrorCode::kShapeMismatch, "feature map does not match the convolution spec");
  if (qw.in_channels != spec.in_channels || qw.out_channels != spec.out_channels || qw.kernel != spec.kernel)
    fail(ErrorCode::kShapeMismatch, "weight does not match the convolution spec");
  if (qx.bits != spec.bits || qw.bits != spec.bits)
    fail(ErrorCode::kInvalidArgument, "operand bit-widths do not match the convolution spec");
}

void check_layer_granularity(const QuantizedWeight& qw) {
  if (qw.granularity != Granularity::kLayer)
    fail(ErrorCode::kUnsupported, "channel-wise de-transformation needs layer-granularity weights, got " +
                                      to_string(qw.granularity));
}

// Range of kernel taps (u) that stay inside [0, extent) for output row j.
struct TapRange {
  std::size_t begin, end;
};
TapRange taps_in_bounds(std::size_t j, std::size_t pad, std::size_t kernel, std::size_t extent) {
  // Input index is j + u - pad.
  const std::size_t begin = j < pad ? pad - j : 0;
  const std::size_t limit = extent + pad - j;  // u < limit
  return {begin, std::min(kernel, limit)};
}

void audit_codes(WidthAudit& audit, const QuantizedFeature& qx, const QuantizedWeight& qw) {
  audit.mark_used(Site::kFeatureCode);
  audit.mark_used(Site::kWeightCode);
  for (auto c : qx.codes) audit.observe(Site::kFeatureCode, c);
  for (auto c : qw.codes) audit.observe(Site::kWeightCode, c);
}

// Integer window sums for one (input channel, output channel, position):
// P = Σ x̂·ŵ and Q = Σ ŵ over in-bounds taps.
struct WindowSums {
  std::int64_t products;
  std::int64_t weights;
};

struct Window {
  const QuantizedFeature& qx;
  const QuantizedWeight& qw;
  std::size_t pad;

  WindowSums sums(std::size_t c, std::size_t i, std::size_t oy, std::size_t ox, WidthAudit& audit) const {
    const std::size_t k = qw.kernel;
    const TapRange rows = taps_in_bounds(oy, pad, k, qx.height);
    const TapRange cols = taps_in_bounds(ox, pad, k, qx.width);
    std::int64_t p = 0, q = 0;
    for (std::size_t u = rows.begin; u < rows.end; ++u) {
      const std::size_t iy = oy + u - pad;
      for (std::size_t v = cols.begin; v < cols.end; ++v) {
        const std::int64_t xc = qx.code(c, iy, ox + v - pad);
        const std::int64_t wc = qw.code(c, i, u, v);
        const std::int64_t prod = xc * wc;
        audit.observe(Site::kProduct, prod);
        p += prod;
        q += wc;
        audit.observe(Site::kKernelSum, p);
        audit.observe(Site::kWeightSum, q);
      }
    }
    return {p, q};
  }
};

// Runs body(i, oy, ox, audit) -> double over every output element in
// parallel across output channels and merges the per-worker audits.
template <typename Body>
Tensor for_each_output(const ConvSpec& spec, WidthAudit& audit, Body body) {
  const std::size_t oh = spec.out_height(), ow = spec.out_width();
  std::vector<double> y(spec.out_channels * oh * ow);
  std::vector<WidthAudit> partial(worker_count(spec.out_channels), audit);
  parallel_for(spec.out_channels, [&](std::size_t begin, std::size_t end, std::size_t worker) {
    WidthAudit& local = partial[worker];
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t oy = 0; oy < oh; ++oy)
        for (std::size_t ox = 0; ox < ow; ++ox) y[(i * oh + oy) * ow + ox] = body(i, oy, ox, local);
  });
  for (const auto& p : partial) audit.merge(p);
  return Tensor({spec.out_channels, oh, ow}, std::move(y));
}

}  // namespace

int feature_code_bits(const QuantizedFeature& qx) {
  std::uint64_t widest = 0;
  for (const auto& p : qx.params)
    widest = std::max({widest, static_cast<std::uint64_t>(std::llabs(p.window.lo)),
                       static_cast<std::uint64_t>(std::llabs(p.window.hi))});
  return magnitude_bits(widest);
}

Tensor conv_reference(const Tensor& x, const Tensor& w, const ConvSpec& spec) {
  spec.validate();
  if (x.shape() != Shape{spec.in_channels, spec.height, spec.width})
    fail(ErrorCode::kShapeMismatch, "feature map " + shape_to_string(x.shape()) + " does not match the layer shape");
  if (w.shape() != Shape{spec.in_channels, spec.out_channels, spec.kernel, spec.kernel})
    fail(ErrorCode::kShapeMismatch, "weight " + shape_to_string(w.shape()) + " does not match the layer shape");

  const std::size_t oh = spec.out_height(), ow = spec.out_width(), pad = spec.pad();
  std::vector<double> y(spec.out_channels * oh * ow, 0.0);
  parallel_for(spec.out_channels, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t oy = 0; oy < oh; ++oy)
        for (std::size_t ox = 0; ox < ow; ++ox) {
          const TapRange rows = taps_in_bounds(oy, pad, spec.kernel, spec.height);
          const TapRange cols = taps_in_bounds(ox, pad, spec.kernel, spec.width);
          double acc = 0.0;
          for (std::size_t c = 0; c < spec.in_channels; ++c)
            for (std::size_t u = rows.begin; u < rows.end; ++u)
              for (std::size_t v = cols.begin; v < cols.end; ++v)
                acc += x.at(c, oy + u - pad, ox + v - pad) * w.at(c, i, u, v);
          y[(i * oh + oy) * ow + ox] = acc;
        }
  });
  return Tensor({spec.out_channels, oh, ow}, std::move(y));
}

PipelineOutput conv_elementwise(const QuantizedFeature& qx, const QuantizedWeight& qw, const ConvSpec& spec) {
  check_operands(qx, qw, spec);
  return {conv_reference(dequantize_feature(qx), dequantize_weight(qw), spec), elementwise_cost(spec), {}};
}

PipelineOutput conv_channelwise(const QuantizedFeature& qx, const QuantizedWeight& qw, const ConvSpec& spec,
                                std::optional<WidthPlan> plan) {
  check_operands(qx, qw, spec);
  check_layer_granularity(qw);
  WidthAudit audit(plan.value_or(plan_widths(spec, feature_code_bits(qx))));
  audit_codes(audit, qx, qw);
  for (auto s : {Site::kProduct, Site::kKernelSum, Site::kWeightSum}) audit.mark_used(s);

  const double sigma_w = qw.scales.front();
  const double weight_scale = sigma_w * qw.step;  // σ_w·s(n)
  const Window window{qx, qw, spec.pad()};
  const auto& params = qx.params;

  // y = σ_w·s(n) · [ s(n)·Σ_c σ_c·P_c + Σ_c μ_c·Q_c ]
  Tensor y = for_each_output(spec, audit, [&](std::size_t i, std::size_t oy, std::size_t ox, WidthAudit& local) {
    double scaled = 0.0, offset = 0.0;
    for (std::size_t c = 0; c < spec.in_channels; ++c) {
      const WindowSums s = window.sums(c, i, oy, ox, local);
      scaled += params[c].stddev * static_cast<double>(s.products);
      offset += params[c].mean * static_cast<double>(s.weights);
    }
    return weight_scale * (qx.step * scaled + offset);
  });
  audit.enforce();
  return {std::move(y), channelwise_cost(spec), audit};
}

PipelineOutput conv_qq(const QuantizedFeature& qx, const QuantizedWeight& qw, const QQParams& qq,
                       const ConvSpec& spec, std::optional<WidthPlan> plan) {
  check_operands(qx, qw, spec);
  check_layer_granularity(qw);
  if (qq.channels() != qx.channels) fail(ErrorCode::kShapeMismatch, "QQ parameters do not cover every channel");
  if (qq.bits != spec.qq_bits) fail(ErrorCode::kInvalidArgument, "QQ bit-width does not match the layer configuration");

  WidthAudit audit(plan.value_or(plan_widths(spec, feature_code_bits(qx))));
  audit_codes(audit, qx, qw);
  audit.mark_used(Site::kQqCode);
  for (std::size_t c = 0; c < qq.channels(); ++c) {
    audit.observe(Site::kQqCode, qq.mean_codes[c]);
    audit.observe(Site::kQqCode, qq.stddev_codes[c]);
  }
  for (auto s : {Site::kProduct, Site::kKernelSum, Site::kWeightSum, Site::kChannelSum, Site::kQqProduct,
                 Site::kQqChannelSum, Site::kQqMeanProduct, Site::kQqMeanChannelSum, Site::kWeightChannelSum})
    audit.mark_used(s);

  const double weight_scale = qw.scales.front() * qw.step;
  const Window window{qx, qw, spec.pad()};

  // y = σ_w·s(n) · [ s(n)·(σ_σ·s(m)·Σσ̂P + μ_σ·ΣP) + σ_μ·s(m)·Σμ̂Q + μ_μ·ΣQ ]
  const double sigma_coeff = qx.step * qq.stddev_of_stddevs * qq.step;
  const double plain_coeff = qx.step * qq.mean_of_stddevs;
  const double mean_coeff = qq.stddev_of_means * qq.step;
  const double weight_coeff = qq.mean_of_means;

  Tensor y = for_each_output(spec, audit, [&](std::size_t i, std::size_t oy, std::size_t ox, WidthAudit& local) {
    std::int64_t sigma_sum = 0, plain_sum = 0, mean_sum = 0, weight_sum = 0;
    for (std::size_t c = 0; c < spec.in_channels; ++c) {
      const WindowSums s = window.sums(c, i, oy, ox, local);
      const std::int64_t sp = qq.stddev_codes[c] * s.products;
      const std::int64_t mq = qq.mean_codes[c] * s.weights;
      local.observe(Site::kQqProduct, sp);
      local.observe(Site::kQqMeanProduct, mq);
      sigma_sum += sp;
      plain_sum += s.products;
      mean_sum += mq;
      weight_sum += s.weights;
      local.observe(Site::kQqChannelSum, sigma_sum);
      local.observe(Site::kChannelSum, plain_sum);
      local.observe(Site::kQqMeanChannelSum, mean_sum);
      local.observe(Site::kWeightChannelSum, weight_sum);
    }
    return weight_scale * (sigma_coeff * static_cast<double>(sigma_sum) + plain_coeff * static_cast<double>(plain_sum) +
                           mean_coeff * static_cast<double>(mean_sum) + weight_coeff * static_cast<double>(weight_sum));
  });
  audit.enforce();
  return {std::move(y), qq_cost(spec), audit};
}

Tensor relu(const Tensor& t) {
  std::vector<double> out(t.data().begin(), t.data().end());
  for (auto& v : out) v = std::max(v, 0.0);
  return Tensor(t.shape(), std::move(out));
}

BlockResult run_block(const Tensor& x, const std::vector<BlockLayer>& layers, const BlockOptions& options) {
  if (layers.empty()) fail(ErrorCode::kInvalidArgument, "block needs at least one layer");
  if (!options.table) fail(ErrorCode::kInvalidArgument, "block needs a step-size table");
  BlockResult result;
  Tensor current = x;
  bool post_relu = options.input_post_relu;
  for (const auto& layer : layers) {
    LayerSummary summary;
    summary.spec = spec_for(current, layer.weight, options.padding, options.bits, options.qq_bits);
    summary.post_relu_input = post_relu;
    PipelineOutput out;
    if (options.pipeline == Pipeline::kReference) {
      out = {conv_reference(current, layer.weight, summary.spec), reference_cost(summary.spec), {}};
    } else {
      const QuantizedFeature qx = quantize_feature(current, options.bits, *options.table, post_relu);
      const QuantizedWeight qw = quantize_weight(layer.weight, options.bits, *options.table, options.granularity);
      for (const auto& p : qx.params) {
        summary.alphas.push_back(p.alpha);
        summary.level_steps.push_back(p.stddev * qx.step);
        summary.min_levels.push_back(p.mean + p.stddev * qx.step * static_cast<double>(p.window.lo));
      }
      switch (options.pipeline) {
        case Pipeline::kElementwise: out = conv_elementwise(qx, qw, summary.spec); break;
        case Pipeline::kChannelwise: out = conv_channelwise(qx, qw, summary.spec); break;
        case Pipeline::kQq: {
          const QQParams qq = quantize_qq(qx.means(), qx.stddevs(), options.qq_bits, *options.table);
          out = conv_qq(qx, qw, qq, summary.spec);
          break;
        }
        case Pipeline::kReference: break;
      }
    }
    current = layer.relu_after ? relu(out.y) : std::move(out.y);
    post_relu = layer.relu_after;
    summary.audit = out.audit;
    summary.cost = out.cost;
    result.cost += out.cost;
    result.layers.push_back(std::move(summary));
  }
  result.y = std::move(current);
  return result;
}

}  // namespace daq
