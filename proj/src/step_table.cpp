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

#include "daq/step_table.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "daq/error.hpp"

namespace daq {

StepSizeTable::StepSizeTable(std::string distribution, std::map<int, double> entries)
    : distribution_(std::move(distribution)), entries_(std::move(entries)) {
  if (distribution_.empty()) fail(ErrorCode::kInvalidArgument, "step table needs a distribution name");
  if (entries_.empty()) fail(ErrorCode::kInvalidArgument, "step table is empty");
  double previous = INFINITY;
  for (const auto& [bits, step] : entries_) {
    if (bits < kMinBits || bits > kMaxBits)
      fail(ErrorCode::kInvalidArgument, "step table bit-width out of range: " + std::to_string(bits));
    if (!(step > 0.0) || !std::isfinite(step))
      fail(ErrorCode::kInvalidArgument, "step sizes must be positive and finite");
    if (!(step < previous))
      fail(ErrorCode::kInvalidArgument, "step sizes must strictly decrease with bit-width");
    previous = step;
  }
}

const StepSizeTable& StepSizeTable::gaussian() {
  static const StepSizeTable table(
      "gaussian", {{1, 1.596}, {2, 0.996}, {3, 0.586}, {4, 0.335}, {8, 0.031}});
  return table;
}

double StepSizeTable::step(int bits) const {
  const auto it = entries_.find(bits);
  if (it == entries_.end())
    fail(ErrorCode::kMissingStepSize,
         "no " + distribution_ + " step size for " + std::to_string(bits) + "-bit quantization");
  return it->second;
}

StepSizeTable parse_step_table(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string distribution;
  std::map<int, double> entries;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    const auto where = " (line " + std::to_string(line_no) + ")";
    if (first == "distribution") {
      if (!distribution.empty()) fail(ErrorCode::kParse, "duplicate distribution line" + where);
      if (!(fields >> distribution)) fail(ErrorCode::kParse, "distribution needs a name" + where);
    } else {
      if (distribution.empty()) fail(ErrorCode::kParse, "distribution header must come first" + where);
      int bits = 0;
      double step = 0.0;
      std::istringstream row(line);
      if (!(row >> bits >> step)) fail(ErrorCode::kParse, "expected '<n> <s(n)>'" + where);
      std::string extra;
      if (row >> extra) fail(ErrorCode::kParse, "trailing text" + where);
      if (!entries.emplace(bits, step).second) fail(ErrorCode::kParse, "duplicate bit-width" + where);
    }
  }
  if (distribution.empty()) fail(ErrorCode::kParse, "missing distribution header");
  return StepSizeTable(distribution, std::move(entries));
}

StepSizeTable load_step_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open step table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_step_table(buf.str());
}

std::string format_step_table(const StepSizeTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "distribution " << table.distribution() << '\n';
  for (const auto& [bits, step] : table.entries()) out << bits << ' ' << step << '\n';
  return out.str();
}

}  // namespace daq
