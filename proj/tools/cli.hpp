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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "daq/error.hpp"

namespace daq::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitBelowThreshold = 1,  // compare --min-psnr not met
  kExitUsage = 2,
  kExitIo = 3,
  kExitShape = 4,
  kExitAudit = 5,
};

int exit_code_for(ErrorCode code) noexcept;

struct RunConfig {
  std::string subcommand;

  // Paths.
  std::string input;
  std::string other;                 // compare: second tensor
  std::vector<std::string> weights;  // conv: one, block: one per layer
  std::string output;                // tensor output, or report for cost/compare
  std::string report;                // conv/block report file
  std::string step_table;
  std::string energy;

  // Quantization.
  int n = 2;
  int m = 4;
  std::string pipeline = "channelwise";
  std::string granularity = "layer";
  std::string padding = "same";
  bool post_relu = false;            // input feature map is post-ReLU
  std::vector<int> relu;             // block: ReLU after each layer
  std::string kind = "feature";      // quantize: feature | weight

  // Generation.
  std::string shape;
  std::string dist = "gaussian";
  std::uint64_t seed = 0;
  std::string dtype = "f64";

  // Analytic dims.
  std::string preset;
  std::uint64_t C = 0, Cout = 0, K = 0, H = 0, W = 0;

  double peak = 255.0;
  std::optional<double> min_psnr;
  bool check = false;
  std::string format = "json";
  std::vector<int> bits;             // steps: bit-widths to derive
};

int cmd_gen(const RunConfig& cfg, std::ostream& out);
int cmd_quantize(const RunConfig& cfg, std::ostream& out);
int cmd_conv(const RunConfig& cfg, std::ostream& out);
int cmd_cost(const RunConfig& cfg, std::ostream& out);
int cmd_compare(const RunConfig& cfg, std::ostream& out);
int cmd_block(const RunConfig& cfg, std::ostream& out);
int cmd_steps(const RunConfig& cfg, std::ostream& out);

// Parses argv-style arguments (without the program name), dispatches, and
// maps errors to exit codes. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace daq::cli
