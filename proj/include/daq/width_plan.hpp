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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "daq/conv_spec.hpp"

namespace daq {

// Integer sites of the quantized convolution pipelines.
enum class Site : std::size_t {
  kFeatureCode,      // x̂ codes
  kWeightCode,       // ŵ codes
  kQqCode,           // μ̂ / σ̂ codes
  kProduct,          // x̂ · ŵ
  kKernelSum,        // P = Σ_uv x̂ · ŵ
  kWeightSum,        // Q = Σ_uv ŵ (in-bounds taps only)
  kChannelSum,       // Σ_c P
  kQqProduct,        // σ̂ · P
  kQqChannelSum,     // Σ_c σ̂ · P
  kQqMeanProduct,    // μ̂ · Q
  kQqMeanChannelSum, // Σ_c μ̂ · Q
  kWeightChannelSum, // Σ_c Q
};
inline constexpr std::size_t kSiteCount = 12;

std::string_view to_string(Site site);

// Width rules. A value v fits in b bits when |v| < 2^(b-1).
int product_bits(int a_bits, int b_bits);                // a + b - 1
int sum_bits(int term_bits, std::uint64_t terms);        // w + ceil(log2 N)
int ceil_log2(std::uint64_t x);                          // 0 for x <= 1
int magnitude_bits(std::uint64_t max_abs);               // smallest b with max_abs < 2^(b-1)

struct WidthPlan {
  std::array<int, kSiteCount> bits{};

  int& operator[](Site s) { return bits[static_cast<std::size_t>(s)]; }
  int operator[](Site s) const { return bits[static_cast<std::size_t>(s)]; }

  int product_bits() const { return (*this)[Site::kProduct]; }
  int kernel_sum_bits() const { return (*this)[Site::kKernelSum]; }
  int channel_sum_bits() const { return (*this)[Site::kChannelSum]; }
  int qq_product_bits() const { return (*this)[Site::kQqProduct]; }
  int qq_channel_sum_bits() const { return (*this)[Site::kQqChannelSum]; }

  // Every site narrowed by `delta` bits (used to prove the audit bites).
  WidthPlan narrowed(int delta) const;

  std::string describe() const;
};

// Feature codes of an n-bit map span at most [-(2^{n-1}-1), 2^n - 1] when
// the post-ReLU shift is bounded by 2^{n-1}-1, which needs n + 1 bits. The
// overload takes the measured code width when a map's shift is larger.
WidthPlan plan_widths(const ConvSpec& spec);
WidthPlan plan_widths(const ConvSpec& spec, int feature_code_bits);

/// Largest magnitude observed at each site, checked against a plan.
class WidthAudit {
 public:
  WidthAudit() = default;
  explicit WidthAudit(WidthPlan plan) : plan_(plan) {}

  void observe(Site s, std::int64_t value) noexcept {
    const auto a = static_cast<std::uint64_t>(value < 0 ? -value : value);
    auto& slot = max_abs_[static_cast<std::size_t>(s)];
    if (a > slot) slot = a;
  }
  void merge(const WidthAudit& other) noexcept;

  const WidthPlan& plan() const noexcept { return plan_; }
  std::uint64_t max_abs(Site s) const noexcept { return max_abs_[static_cast<std::size_t>(s)]; }
  bool used(Site s) const noexcept { return used_[static_cast<std::size_t>(s)]; }
  void mark_used(Site s) noexcept { used_[static_cast<std::size_t>(s)] = true; }

  struct Violation {
    Site site;
    int planned_bits;
    std::uint64_t max_abs;
  };
  std::vector<Violation> violations() const;
  // Throws ErrorCode::kWidthAudit listing every violation.
  void enforce() const;

 private:
  WidthPlan plan_{};
  std::array<std::uint64_t, kSiteCount> max_abs_{};
  std::array<bool, kSiteCount> used_{};
};

}  // namespace daq
