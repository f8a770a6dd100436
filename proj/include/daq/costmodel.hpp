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
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace daq {

enum class OpKind { kIntMul, kIntAdd, kFpMul, kFpAdd, kFpFma, kFpDiv, kFpSqrt, kCompare };

std::string to_string(OpKind kind);
OpKind parse_op_kind(const std::string& text);
bool is_float(OpKind kind) noexcept;

// Operand widths are stored with bits_a <= bits_b.
struct OpKey {
  int bits_a = 0;
  int bits_b = 0;
  OpKind kind = OpKind::kIntAdd;

  auto operator<=>(const OpKey&) const = default;
};

OpKey make_key(int bits_a, int bits_b, OpKind kind);

/// Multiset of arithmetic operations keyed by (operand widths, kind).
class OpLedger {
 public:
  void add(int bits_a, int bits_b, OpKind kind, std::uint64_t count);
  std::uint64_t count(int bits_a, int bits_b, OpKind kind) const;
  // Total across kinds for one width pair.
  std::uint64_t count(int bits_a, int bits_b) const;
  std::uint64_t total_ops() const;

  const std::map<OpKey, std::uint64_t>& entries() const noexcept { return counts_; }
  bool empty() const noexcept { return counts_.empty(); }

  OpLedger& operator+=(const OpLedger& other);
  friend OpLedger operator+(OpLedger a, const OpLedger& b) { return a += b; }
  friend bool operator==(const OpLedger&, const OpLedger&) = default;

 private:
  std::map<OpKey, std::uint64_t> counts_;
};

/// Ledger split into named stages; the total is their merge.
struct CostBreakdown {
  std::vector<std::pair<std::string, OpLedger>> stages;

  OpLedger& stage(const std::string& name);
  const OpLedger* find(const std::string& name) const;
  OpLedger total() const;
  CostBreakdown& operator+=(const CostBreakdown& other);
};

__extension__ typedef unsigned __int128 Bops;

// Σ count · bits_a · bits_b. Throws kOverflow if the total leaves 128 bits.
Bops bops(const OpLedger& ledger);
std::string to_string(Bops value);
double to_double(Bops value) noexcept;

/// Per-op energy in picojoules as a function of operand width.
///
/// Anchors are (kind, width, pJ) points. Add-like kinds (int-add, fp-add,
/// compare) interpolate linearly in width through their two anchors,
/// multiply-like kinds (int-mul, fp-mul, fp-div, fp-sqrt) quadratically.
/// A float kind with a single anchor follows its integer counterpart's law
/// rescaled to hit that anchor. Kinds without anchors inherit: fp-div and
/// fp-sqrt from fp-mul, compare from int-add; fp-fma costs fp-mul + fp-add.
/// Mixed-width ops are priced at max(bits_a, bits_b).
class EnergyModel {
 public:
  struct Anchor {
    OpKind kind;
    int width;
    double picojoules;
  };

  explicit EnergyModel(std::vector<Anchor> anchors);
  // 45 nm figures: int-add 8b 0.03 / 32b 0.1; int-mul 8b 0.2 / 32b 3.1;
  // fp-add 32b 0.9; fp-mul 32b 3.7 (pJ).
  static EnergyModel default_45nm();

  double picojoules(OpKind kind, int width) const;
  const std::vector<Anchor>& anchors() const noexcept { return anchors_; }

 private:
  struct Law {
    double offset = 0.0;
    double slope = 0.0;
    bool quadratic = false;
    double scale = 1.0;
    OpKind base = OpKind::kIntAdd;  // used when scale-derived
    bool derived = false;
  };
  double eval(OpKind kind, int width) const;

  std::vector<Anchor> anchors_;
  std::map<OpKind, Law> laws_;
};

// "kind width pJ" per line, '#' comments.
EnergyModel parse_energy_model(const std::string& text);
EnergyModel load_energy_model(const std::filesystem::path& path);

double energy_pj(const OpLedger& ledger, const EnergyModel& model);
inline double energy_joules(const OpLedger& ledger, const EnergyModel& model) {
  return energy_pj(ledger, model) * 1e-12;
}

// Standardization cost: C(5HW+3) FP32 ops per feature map (stage
// "feature-transform") and 3K²·C·Cout once per weight tensor (stage
// "weight-transform").
CostBreakdown transform_overhead(std::uint64_t channels, std::uint64_t height, std::uint64_t width,
                                 std::uint64_t kernel, std::uint64_t out_channels);

struct PipelineCost {
  std::string name;
  CostBreakdown cost;
};

struct CostReport {
  struct Row {
    std::string name;
    OpLedger ops;
    Bops bops = 0;
    double energy_pj = 0.0;
    std::vector<std::pair<std::string, OpLedger>> stages;
  };
  std::vector<Row> pipelines;
  std::vector<std::string> notes;
};

CostReport make_report(const std::vector<PipelineCost>& pipelines, const EnergyModel& model,
                       std::vector<std::string> notes = {});
nlohmann::ordered_json to_json(const CostReport& report);
std::string render_json(const CostReport& report);
std::string render_text(const CostReport& report);

}  // namespace daq
