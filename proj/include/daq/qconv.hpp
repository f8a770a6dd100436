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

#include <optional>
#include <string>
#include <vector>

#include "daq/conv_spec.hpp"
#include "daq/costmodel.hpp"
#include "daq/quantizer.hpp"
#include "daq/tensor.hpp"
#include "daq/width_plan.hpp"

namespace daq {

// Where de-transformation happens:
//   kReference    FP convolution, no quantization
//   kElementwise  every operand de-transformed to FP, then convolved
//   kChannelwise  integer window sums, FP per-channel scaling and channel sum
//   kQq           integer channel sums with m-bit mean/stddev codes
enum class Pipeline { kReference, kElementwise, kChannelwise, kQq };

std::string to_string(Pipeline p);
Pipeline parse_pipeline(const std::string& text);

struct PipelineOutput {
  Tensor y;                // Cout x H' x W'
  CostBreakdown cost;      // analytic ledger for the layer shape
  WidthAudit audit;        // integer sites only; empty for FP pipelines
};

// ConvSpec implied by quantized operands. Throws kShapeMismatch / kInvalidArgument
// when the operands disagree with each other.
ConvSpec spec_for(const QuantizedFeature& qx, const QuantizedWeight& qw, Padding padding,
                  int qq_bits = 4);
ConvSpec spec_for(const Tensor& x, const Tensor& w, Padding padding, int bits = 2, int qq_bits = 4);

// y[i,j,k] = Σ_c Σ_u Σ_v x_c[u+j, v+k] · w_c[i,u,v] in FP64.
Tensor conv_reference(const Tensor& x, const Tensor& w, const ConvSpec& spec);

PipelineOutput conv_elementwise(const QuantizedFeature& qx, const QuantizedWeight& qw,
                                const ConvSpec& spec);

// Requires layer-granularity weights. `plan` overrides the default width
// plan (plan_widths for the measured feature code width); the audit is
// enforced either way.
PipelineOutput conv_channelwise(const QuantizedFeature& qx, const QuantizedWeight& qw,
                                const ConvSpec& spec, std::optional<WidthPlan> plan = std::nullopt);

PipelineOutput conv_qq(const QuantizedFeature& qx, const QuantizedWeight& qw, const QQParams& qq,
                       const ConvSpec& spec, std::optional<WidthPlan> plan = std::nullopt);

// Widest code of a feature map, as a signed bit-width.
int feature_code_bits(const QuantizedFeature& qx);

// ---------------------------------------------------------------------------
// Analytic op ledgers. Every pipeline prices K² products per output element
// regardless of padding. N = C·Cout·H'·W' (channel-positions), O = Cout·H'·W'.
// Operand-width labels follow the (2n-1)-bit product and w + ceil(log2(N-1))
// sum rules, which give the (3,3), (6,6), (6,4), (9,9), (14,32), (17,32)
// columns for the 2-bit 256-channel 3x3 layer.
CostBreakdown reference_cost(const ConvSpec& spec);
CostBreakdown elementwise_cost(const ConvSpec& spec);
CostBreakdown channelwise_cost(const ConvSpec& spec);
CostBreakdown qq_cost(const ConvSpec& spec);
CostBreakdown pipeline_cost(Pipeline p, const ConvSpec& spec);

// Human-readable statement of the counting conventions, for reports.
std::vector<std::string> cost_conventions();

// ---------------------------------------------------------------------------
// Chained convolution block.

struct BlockLayer {
  Tensor weight;           // C x Cout x K x K
  bool relu_after = false; // apply ReLU to this layer's output
};

struct BlockOptions {
  int bits = 2;
  int qq_bits = 4;
  const StepSizeTable* table = &StepSizeTable::gaussian();
  Pipeline pipeline = Pipeline::kChannelwise;
  Granularity granularity = Granularity::kLayer;
  Padding padding = Padding::kSameZero;
  bool input_post_relu = false;
};

struct LayerSummary {
  ConvSpec spec;
  bool post_relu_input = false;
  std::vector<double> alphas;       // per input channel, empty for kReference
  std::vector<double> min_levels;   // μ_c + σ_c·s(n)·k_min per input channel
  std::vector<double> level_steps;  // σ_c·s(n) per input channel
  WidthAudit audit;
  CostBreakdown cost;
};

struct BlockResult {
  Tensor y;
  CostBreakdown cost;
  std::vector<LayerSummary> layers;
};

BlockResult run_block(const Tensor& x, const std::vector<BlockLayer>& layers, const BlockOptions& options);

Tensor relu(const Tensor& t);

}  // namespace daq
