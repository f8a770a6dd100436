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
#include <utility>
#include <vector>
#include "daq/width_plan.hpp"

namespace daq {
namespace {

constexpr int kFp = 32;

// Operand-width labels for ledger rows.
struct Labels {
  int code;           // n
  int product;        // 2n - 1
  int window;         // product + ceil(log2(K²-1))
  int qq_weighted;    // window + m - 1
  int channel;        // window + ceil(log2(C-1))
  int qq_channel;     // qq_weighted + ceil(log2(C-1))
};

Labels labels_for(const ConvSpec& spec) {
  Labels l{};
  const std::uint64_t taps = spec.kernel * spec.kernel;
  l.code = spec.bits;
  l.product = 2 * spec.bits - 1;
  l.window = l.product + (taps > 1 ? ceil_log2(taps - 1) : 0);
  l.qq_weighted = l.window + spec.qq_bits - 1;
  const int channel_growth = spec.in_channels > 1 ? ceil_log2(spec.in_channels - 1) : 0;
  l.channel = l.window + channel_growth;
  l.qq_channel = l.qq_weighted + channel_growth;
  return l;
}

struct Counts {
  std::uint64_t taps, n, o;
};

Counts counts_for(const ConvSpec& spec) {
  spec.validate();
  return {spec.kernel * spec.kernel, spec.channel_positions(), spec.output_positions() * spec.out_channels};
}

void add_nonzero(OpLedger& ledger, int a, int b, OpKind kind, std::uint64_t count) {
  if (count) ledger.add(a, b, kind, count);
}

// Stages with no work (a 1x1 window has no window-sum) are dropped.
CostBreakdown pruned(CostBreakdown cost) {
  std::erase_if(cost.stages, [](const auto& stage) { return stage.second.empty(); });
  return cost;
}

}  // namespace

CostBreakdown reference_cost(const ConvSpec& spec) {
  const Counts k = counts_for(spec);
  CostBreakdown cost;
  add_nonzero(cost.stage("products"), kFp, kFp, OpKind::kFpMul, k.taps * k.n);
  add_nonzero(cost.stage("window-sum"), kFp, kFp, OpKind::kFpAdd, (k.taps - 1) * k.n);
  add_nonzero(cost.stage("channel-sum"), kFp, kFp, OpKind::kFpAdd, k.n);
  return pruned(std::move(cost));
}

CostBreakdown elementwise_cost(const ConvSpec& spec) {
  const Counts k = counts_for(spec);
  CostBreakdown cost;
  add_nonzero(cost.stage("products"), kFp, kFp, OpKind::kFpMul, k.taps * k.n);
  add_nonzero(cost.stage("window-sum"), kFp, kFp, OpKind::kFpAdd, (k.taps - 1) * k.n);
  OpLedger& partial = cost.stage("partial-detransform");
  partial.add(kFp, kFp, OpKind::kFpMul, k.n);
  partial.add(kFp, kFp, OpKind::kFpAdd, k.n);
  add_nonzero(cost.stage("channel-sum"), kFp, kFp, OpKind::kFpAdd, k.n);
  OpLedger& operands = cost.stage("operand-detransform");
  const std::uint64_t features = spec.in_channels * spec.height * spec.width;
  const std::uint64_t weights = spec.in_channels * spec.out_channels * k.taps;
  operands.add(kFp, kFp, OpKind::kFpMul, features + weights);
  operands.add(kFp, kFp, OpKind::kFpAdd, features + weights);
  return pruned(std::move(cost));
}

CostBreakdown channelwise_cost(const ConvSpec& spec) {
  const Counts k = counts_for(spec);
  const Labels l = labels_for(spec);
  CostBreakdown cost;
  add_nonzero(cost.stage("products"), l.code, l.code, OpKind::kIntMul, k.taps * k.n);
  add_nonzero(cost.stage("window-sum"), l.product, l.product, OpKind::kIntAdd, (k.taps - 1) * k.n);
  add_nonzero(cost.stage("mean-term"), l.window, l.window, OpKind::kIntAdd, k.n);
  add_nonzero(cost.stage("channel-sum"), kFp, kFp, OpKind::kFpFma, k.n);
  OpLedger& out = cost.stage("output-detransform");
  out.add(kFp, kFp, OpKind::kFpMul, k.o);
  out.add(kFp, kFp, OpKind::kFpAdd, k.o);
  return pruned(std::move(cost));
}

CostBreakdown qq_cost(const ConvSpec& spec) {
  const Counts k = counts_for(spec);
  const Labels l = labels_for(spec);
  CostBreakdown cost;
  add_nonzero(cost.stage("products"), l.code, l.code, OpKind::kIntMul, 2 * k.taps * k.n);
  add_nonzero(cost.stage("window-sum"), l.product, l.product, OpKind::kIntAdd, 2 * (k.taps - 1) * k.n);
  add_nonzero(cost.stage("qq-product"), l.window, spec.qq_bits, OpKind::kIntMul, k.n);
  OpLedger& channel = cost.stage("channel-sum");
  add_nonzero(channel, l.window, l.window, OpKind::kIntAdd, k.n);
  add_nonzero(channel, l.qq_weighted, l.qq_weighted, OpKind::kIntAdd, (spec.in_channels - 1) * k.o);
  OpLedger& out = cost.stage("output-detransform");
  out.add(l.channel, kFp, OpKind::kFpMul, k.o);
  out.add(l.qq_channel, kFp, OpKind::kFpMul, k.o);
  out.add(kFp, kFp, OpKind::kFpAdd, 2 * k.o);
  return pruned(std::move(cost));
}

CostBreakdown pipeline_cost(Pipeline p, const ConvSpec& spec) {
  switch (p) {
    case Pipeline::kReference: return reference_cost(spec);
    case Pipeline::kElementwise: return elementwise_cost(spec);
    case Pipeline::kChannelwise: return channelwise_cost(spec);
    case Pipeline::kQq: return qq_cost(spec);
  }
  return {};
}

std::vector<std::string> cost_conventions() {
  return {
      "N = C*Cout*H'*W' channel-positions, O = Cout*H'*W' outputs; K^2 products per output regardless of padding",
      "labels: products of n-bit codes are 2n-1 bits; a sum of T terms of w bits is w + ceil(log2(T-1)) bits",
      "elementwise: K^2 mul, K^2-1 add, 2 partial de-transform ops and 1 channel add per channel-position, "
      "plus mul+add per feature element and per weight, all FP32",
      "channelwise: K^2 int mul, K^2-1 int add, 1 mean-term int add and 1 FP32 fma per channel-position, "
      "plus FP32 mul+add per output",
      "qq: 2K^2 int mul, 2(K^2-1) int add, 1 stddev-code mul and 1 int add per channel-position, "
      "C-1 weighted int adds per output, 2 FP muls and 2 FP32 adds per output; mean terms are position-independent "
      "and hoisted",
      "standardization overhead is reported separately: C(5HW+3) per feature map, 3K^2*C*Cout per weight tensor",
  };
}

}  // namespace daq
