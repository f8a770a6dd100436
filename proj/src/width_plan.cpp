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

#include "daq/width_plan.hpp"

#include <bit>
#include <sstream>

#include "daq/error.hpp"

namespace daq {

std::string_view to_string(Site site) {
  switch (site) {
    case Site::kFeatureCode: return "feature-code";
    case Site::kWeightCode: return "weight-code";
    case Site::kQqCode: return "qq-code";
    case Site::kProduct: return "product";
    case Site::kKernelSum: return "kernel-sum";
    case Site::kWeightSum: return "weight-sum";
    case Site::kChannelSum: return "channel-sum";
    case Site::kQqProduct: return "qq-product";
    case Site::kQqChannelSum: return "qq-channel-sum";
    case Site::kQqMeanProduct: return "qq-mean-product";
    case Site::kQqMeanChannelSum: return "qq-mean-channel-sum";
    case Site::kWeightChannelSum: return "weight-channel-sum";
  }
  return "unknown";
}

int ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return 64 - std::countl_zero(x - 1);
}

int product_bits(int a_bits, int b_bits) { return a_bits + b_bits - 1; }

int sum_bits(int term_bits, std::uint64_t terms) { return term_bits + ceil_log2(terms); }

int magnitude_bits(std::uint64_t max_abs) { return std::bit_width(max_abs) + 1; }

WidthPlan WidthPlan::narrowed(int delta) const {
  WidthPlan out = *this;
  for (auto& b : out.bits) b -= delta;
  return out;
}

std::string WidthPlan::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < kSiteCount; ++i) {
    if (i) os << ", ";
    os << to_string(static_cast<Site>(i)) << '=' << bits[i];
  }
  return os.str();
}

WidthPlan plan_widths(const ConvSpec& spec) { return plan_widths(spec, spec.bits + 1); }

WidthPlan plan_widths(const ConvSpec& spec, int feature_code_bits) {
  spec.validate();
  const std::uint64_t taps = spec.kernel * spec.kernel;
  WidthPlan p;
  p[Site::kFeatureCode] = feature_code_bits;
  p[Site::kWeightCode] = spec.bits + 1;   // window (-2^{n-1}, 2^{n-1}]
  p[Site::kQqCode] = spec.qq_bits + 1;
  p[Site::kProduct] = product_bits(p[Site::kFeatureCode], p[Site::kWeightCode]);
  p[Site::kKernelSum] = sum_bits(p[Site::kProduct], taps);
  p[Site::kWeightSum] = sum_bits(p[Site::kWeightCode], taps);
  p[Site::kChannelSum] = sum_bits(p[Site::kKernelSum], spec.in_channels);
  p[Site::kQqProduct] = product_bits(p[Site::kQqCode], p[Site::kKernelSum]);
  p[Site::kQqChannelSum] = sum_bits(p[Site::kQqProduct], spec.in_channels);
  p[Site::kQqMeanProduct] = product_bits(p[Site::kQqCode], p[Site::kWeightSum]);
  p[Site::kQqMeanChannelSum] = sum_bits(p[Site::kQqMeanProduct], spec.in_channels);
  p[Site::kWeightChannelSum] = sum_bits(p[Site::kWeightSum], spec.in_channels);
  return p;
}

void WidthAudit::merge(const WidthAudit& other) noexcept {
  for (std::size_t i = 0; i < kSiteCount; ++i) {
    if (other.max_abs_[i] > max_abs_[i]) max_abs_[i] = other.max_abs_[i];
    used_[i] = used_[i] || other.used_[i];
  }
}

std::vector<WidthAudit::Violation> WidthAudit::violations() const {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < kSiteCount; ++i) {
    if (!used_[i]) continue;
    const int bits = plan_.bits[i];
    const bool fits = bits >= 64 || (bits >= 1 && max_abs_[i] < (std::uint64_t{1} << (bits - 1)));
    if (!fits) out.push_back({static_cast<Site>(i), bits, max_abs_[i]});
  }
  return out;
}

void WidthAudit::enforce() const {
  const auto v = violations();
  if (v.empty()) return;
  std::ostringstream os;
  os << "width audit failed:";
  for (const auto& x : v)
    os << ' ' << to_string(x.site) << " saw |v|=" << x.max_abs << " with " << x.planned_bits << " bits;";
  fail(ErrorCode::kWidthAudit, os.str());
}

}  // namespace daq
