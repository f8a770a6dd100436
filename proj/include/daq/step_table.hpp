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

#include <filesystem>
#include <map>
#include <span>
#include <string>

namespace daq {

/// Uniform grid spacing s(n), in standardized units, per bit-width.
///
/// The default table holds the Gaussian step sizes for n = 1, 2, 3, 4, 8.
/// Widths missing from a table are an error on lookup; nothing is ever
/// interpolated. Any loaded table must be strictly decreasing in n.
class StepSizeTable {
 public:
  StepSizeTable(std::string distribution, std::map<int, double> entries);

  static const StepSizeTable& gaussian();

  double step(int bits) const;
  bool contains(int bits) const noexcept { return entries_.count(bits) != 0; }
  const std::string& distribution() const noexcept { return distribution_; }
  const std::map<int, double>& entries() const noexcept { return entries_; }

  friend bool operator==(const StepSizeTable&, const StepSizeTable&) = default;

 private:
  std::string distribution_;
  std::map<int, double> entries_;
};

inline constexpr int kMinBits = 1;
inline constexpr int kMaxBits = 8;

// Text format:
//   # comment lines and blank lines are ignored
//   distribution <name>
//   <n> <s(n)>
//   ...
StepSizeTable parse_step_table(const std::string& text);
StepSizeTable load_step_table(const std::filesystem::path& path);
std::string format_step_table(const StepSizeTable& table);

// Free-function form of StepSizeTable::step.
inline double step_size(int bits, const StepSizeTable& table = StepSizeTable::gaussian()) {
  return table.step(bits);
}

}  // namespace daq
