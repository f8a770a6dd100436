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

#include "daq/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "daq/error.hpp"

namespace daq {

std::string to_string(OpKind kind) {
  switch (kind) {
    case OpKind::kIntMul: return "int-mul";
    case OpKind::kIntAdd: return "int-add";
    case OpKind::kFpMul: return "fp-mul";
    case OpKind::kFpAdd: return "fp-add";
    case OpKind::kFpFma: return "fp-fma";
    case OpKind::kFpDiv: return "fp-div";
    case OpKind::kFpSqrt: return "fp-sqrt";
    case OpKind::kCompare: return "compare";
  }
  return "unknown";
}

OpKind parse_op_kind(const std::string& text) {
  for (auto k : {OpKind::kIntMul, OpKind::kIntAdd, OpKind::kFpMul, OpKind::kFpAdd, OpKind::kFpFma,
                 OpKind::kFpDiv, OpKind::kFpSqrt, OpKind::kCompare})
    if (to_string(k) == text) return k;
  fail(ErrorCode::kParse, "unknown op kind '" + text + "'");
}

bool is_float(OpKind kind) noexcept {
  return kind == OpKind::kFpMul || kind == OpKind::kFpAdd || kind == OpKind::kFpFma ||
         kind == OpKind::kFpDiv || kind == OpKind::kFpSqrt;
}

OpKey make_key(int bits_a, int bits_b, OpKind kind) {
  if (bits_a <= 0 || bits_b <= 0) fail(ErrorCode::kInvalidArgument, "operand widths must be positive");
  return {std::min(bits_a, bits_b), std::max(bits_a, bits_b), kind};
}

void OpLedger::add(int bits_a, int bits_b, OpKind kind, std::uint64_t count) {
  if (count == 0) return;
  auto& slot = counts_[make_key(bits_a, bits_b, kind)];
  if (slot > std::numeric_limits<std::uint64_t>::max() - count)
    fail(ErrorCode::kOverflow, "op count overflows 64 bits");
  slot += count;
}

std::uint64_t OpLedger::count(int bits_a, int bits_b, OpKind kind) const {
  const auto it = counts_.find(make_key(bits_a, bits_b, kind));
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t OpLedger::count(int bits_a, int bits_b) const {
  const auto key = make_key(bits_a, bits_b, OpKind::kIntAdd);
  std::uint64_t total = 0;
  for (const auto& [k, n] : counts_)
    if (k.bits_a == key.bits_a && k.bits_b == key.bits_b) total += n;
  return total;
}

std::uint64_t OpLedger::total_ops() const {
  std::uint64_t total = 0;
  for (const auto& [k, n] : counts_) total += n;
  return total;
}

OpLedger& OpLedger::operator+=(const OpLedger& other) {
  for (const auto& [k, n] : other.counts_) add(k.bits_a, k.bits_b, k.kind, n);
  return *this;
}

OpLedger& CostBreakdown::stage(const std::string& name) {
  for (auto& [n, l] : stages)
    if (n == name) return l;
  return stages.emplace_back(name, OpLedger{}).second;
}

const OpLedger* CostBreakdown::find(const std::string& name) const {
  for (const auto& [n, l] : stages)
    if (n == name) return &l;
  return nullptr;
}

OpLedger CostBreakdown::total() const {
  OpLedger out;
  for (const auto& [n, l] : stages) out += l;
  return out;
}

CostBreakdown& CostBreakdown::operator+=(const CostBreakdown& other) {
  for (const auto& [n, l] : other.stages) stage(n) += l;
  return *this;
}

Bops bops(const OpLedger& ledger) {
  constexpr Bops kMax = ~Bops{0};
  Bops total = 0;
  for (const auto& [k, n] : ledger.entries()) {
    const Bops weight = static_cast<Bops>(k.bits_a) * static_cast<Bops>(k.bits_b);
    if (n != 0 && weight > kMax / n) fail(ErrorCode::kOverflow, "BOPs overflow 128 bits");
    const Bops term = weight * n;
    if (total > kMax - term) fail(ErrorCode::kOverflow, "BOPs overflow 128 bits");
    total += term;
  }
  return total;
}

std::string to_string(Bops value) {
  if (value == 0) return "0";
  std::string digits;
  while (value != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

double to_double(Bops value) noexcept { return static_cast<double>(value); }

// ---------------------------------------------------------------------------
// Energy

namespace {

bool is_quadratic(OpKind kind) {
  return kind == OpKind::kIntMul || kind == OpKind::kFpMul || kind == OpKind::kFpDiv ||
         kind == OpKind::kFpSqrt;
}

OpKind integer_counterpart(OpKind kind) {
  return is_quadratic(kind) ? OpKind::kIntMul : OpKind::kIntAdd;
}

double shape_fn(bool quadratic, int width) {
  const double w = width;
  return quadratic ? w * w : w;
}

constexpr int kMaxModelWidth = 64;

}  // namespace

EnergyModel::EnergyModel(std::vector<Anchor> anchors) : anchors_(std::move(anchors)) {
  std::map<OpKind, std::vector<Anchor>> by_kind;
  for (const auto& a : anchors_) {
    if (a.kind == OpKind::kFpFma) fail(ErrorCode::kInvalidArgument, "fp-fma is derived from fp-mul + fp-add");
    if (a.width < 1 || a.width > kMaxModelWidth || !(a.picojoules > 0.0))
      fail(ErrorCode::kInvalidArgument, "energy anchors need width in [1,64] and positive pJ");
    by_kind[a.kind].push_back(a);
  }
  for (auto kind : {OpKind::kIntAdd, OpKind::kIntMul})
    if (!by_kind.count(kind)) fail(ErrorCode::kInvalidArgument, "energy model needs " + to_string(kind) + " anchors");

  auto fit = [&](OpKind kind, std::vector<Anchor> pts) {
    std::sort(pts.begin(), pts.end(), [](auto& x, auto& y) { return x.width < y.width; });
    if (pts.size() > 2) fail(ErrorCode::kInvalidArgument, "at most two anchors per kind");
    Law law;
    law.quadratic = is_quadratic(kind);
    if (pts.size() == 2) {
      if (pts[0].width == pts[1].width) fail(ErrorCode::kInvalidArgument, "duplicate anchor width");
      const double g0 = shape_fn(law.quadratic, pts[0].width), g1 = shape_fn(law.quadratic, pts[1].width);
      law.slope = (pts[1].picojoules - pts[0].picojoules) / (g1 - g0);
      law.offset = pts[0].picojoules - law.slope * g0;
    } else if (is_float(kind)) {
      law.derived = true;
      law.base = integer_counterpart(kind);
      law.scale = pts[0].picojoules / eval(law.base, pts[0].width);
    } else {
      law.slope = pts[0].picojoules / shape_fn(law.quadratic, pts[0].width);
    }
    laws_[kind] = law;
  };
  fit(OpKind::kIntAdd, by_kind[OpKind::kIntAdd]);
  fit(OpKind::kIntMul, by_kind[OpKind::kIntMul]);
  for (auto kind : {OpKind::kFpAdd, OpKind::kFpMul, OpKind::kFpDiv, OpKind::kFpSqrt, OpKind::kCompare})
    if (by_kind.count(kind)) fit(kind, by_kind[kind]);
  if (!laws_.count(OpKind::kFpAdd) || !laws_.count(OpKind::kFpMul))
    fail(ErrorCode::kInvalidArgument, "energy model needs fp-add and fp-mul anchors");

  for (auto kind : {OpKind::kIntAdd, OpKind::kIntMul, OpKind::kFpAdd, OpKind::kFpMul, OpKind::kFpFma,
                    OpKind::kFpDiv, OpKind::kFpSqrt, OpKind::kCompare}) {
    double previous = 0.0;
    for (int w = 1; w <= kMaxModelWidth; ++w) {
      const double e = picojoules(kind, w);
      if (!(e > previous))
        fail(ErrorCode::kInvalidArgument, "energy of " + to_string(kind) + " must be positive and strictly increasing in width");
      if (is_float(kind) && kind != OpKind::kFpFma && e < picojoules(integer_counterpart(kind), w))
        fail(ErrorCode::kInvalidArgument, to_string(kind) + " must cost at least its integer counterpart");
      previous = e;
    }
  }
}

EnergyModel EnergyModel::default_45nm() {
  return EnergyModel({{OpKind::kIntAdd, 8, 0.03},
                      {OpKind::kIntAdd, 32, 0.1},
                      {OpKind::kIntMul, 8, 0.2},
                      {OpKind::kIntMul, 32, 3.1},
                      {OpKind::kFpAdd, 32, 0.9},
                      {OpKind::kFpMul, 32, 3.7}});
}

double EnergyModel::eval(OpKind kind, int width) const {
  const auto it = laws_.find(kind);
  if (it == laws_.end()) fail(ErrorCode::kInvalidArgument, "no energy law for " + to_string(kind));
  const Law& law = it->second;
  if (law.derived) return law.scale * eval(law.base, width);
  return law.offset + law.slope * shape_fn(law.quadratic, width);
}

double EnergyModel::picojoules(OpKind kind, int width) const {
  switch (kind) {
    case OpKind::kFpFma: return picojoules(OpKind::kFpMul, width) + picojoules(OpKind::kFpAdd, width);
    case OpKind::kFpDiv:
    case OpKind::kFpSqrt:
      if (!laws_.count(kind)) return eval(OpKind::kFpMul, width);
      break;
    case OpKind::kCompare:
      if (!laws_.count(kind)) return eval(OpKind::kIntAdd, width);
      break;
    default: break;
  }
  return eval(kind, width);
}

EnergyModel parse_energy_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<EnergyModel::Anchor> anchors;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    int width = 0;
    double pj = 0.0;
    std::string extra;
    if (!(fields >> width >> pj) || (fields >> extra))
      fail(ErrorCode::kParse, "expected 'kind width pJ' on line " + std::to_string(line_no));
    anchors.push_back({parse_op_kind(kind), width, pj});
  }
  return EnergyModel(std::move(anchors));
}

EnergyModel load_energy_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open energy model " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_energy_model(buf.str());
}

double energy_pj(const OpLedger& ledger, const EnergyModel& model) {
  double total = 0.0;
  for (const auto& [k, n] : ledger.entries())
    total += static_cast<double>(n) * model.picojoules(k.kind, std::max(k.bits_a, k.bits_b));
  return total;
}

CostBreakdown transform_overhead(std::uint64_t channels, std::uint64_t height, std::uint64_t width,
                                 std::uint64_t kernel, std::uint64_t out_channels) {
  if (!channels || !height || !width || !kernel || !out_channels)
    fail(ErrorCode::kInvalidArgument, "transform_overhead needs positive dimensions");
  const std::uint64_t hw = height * width;
  CostBreakdown out;
  // Per channel: mean (HW adds, 1 div), variance (HW subtracts, HW squares,
  // HW adds, 1 div, 1 sqrt), transform (HW scales).
  auto& feature = out.stage("feature-transform");
  feature.add(32, 32, OpKind::kFpAdd, channels * 3 * hw);
  feature.add(32, 32, OpKind::kFpMul, channels * 2 * hw);
  feature.add(32, 32, OpKind::kFpDiv, channels * 2);
  feature.add(32, 32, OpKind::kFpSqrt, channels);
  // Per weight: square, accumulate, scale.
  const std::uint64_t weights = kernel * kernel * channels * out_channels;
  auto& weight = out.stage("weight-transform");
  weight.add(32, 32, OpKind::kFpMul, 2 * weights);
  weight.add(32, 32, OpKind::kFpAdd, weights);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

CostReport make_report(const std::vector<PipelineCost>& pipelines, const EnergyModel& model,
                       std::vector<std::string> notes) {
  CostReport report;
  report.notes = std::move(notes);
  for (const auto& p : pipelines) {
    CostReport::Row row;
    row.name = p.name;
    row.ops = p.cost.total();
    row.bops = bops(row.ops);
    row.energy_pj = energy_pj(row.ops, model);
    row.stages = p.cost.stages;
    report.pipelines.push_back(std::move(row));
  }
  return report;
}

namespace {

nlohmann::ordered_json ops_json(const OpLedger& ledger) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [k, n] : ledger.entries()) {
    nlohmann::ordered_json op;
    op["bits_a"] = k.bits_a;
    op["bits_b"] = k.bits_b;
    op["kind"] = to_string(k.kind);
    op["count"] = n;
    arr.push_back(std::move(op));
  }
  return arr;
}

nlohmann::ordered_json bops_json(Bops value) {
  if (value <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(value);
  return to_string(value);
}

std::string with_unit(double value) {
  const char* units[] = {"", "K", "M", "G", "T", "P"};
  int u = 0;
  while (std::abs(value) >= 1000.0 && u < 5) {
    value /= 1000.0;
    ++u;
  }
  std::ostringstream os;
  os << std::fixed << std::setprecision(u == 0 ? 0 : 3) << value << units[u];
  return os.str();
}

}  // namespace

nlohmann::ordered_json to_json(const CostReport& report) {
  nlohmann::ordered_json j;
  j["pipelines"] = nlohmann::ordered_json::array();
  for (const auto& row : report.pipelines) {
    nlohmann::ordered_json p;
    p["name"] = row.name;
    p["ops"] = ops_json(row.ops);
    p["bops"] = bops_json(row.bops);
    p["energy_pj"] = row.energy_pj;
    auto stages = nlohmann::ordered_json::array();
    for (const auto& [name, ledger] : row.stages) {
      nlohmann::ordered_json s;
      s["name"] = name;
      s["ops"] = ops_json(ledger);
      stages.push_back(std::move(s));
    }
    p["stages"] = std::move(stages);
    j["pipelines"].push_back(std::move(p));
  }
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j;
}

std::string render_json(const CostReport& report) { return to_json(report).dump(2) + "\n"; }

std::string render_text(const CostReport& report) {
  std::ostringstream os;
  for (const auto& row : report.pipelines) {
    os << "pipeline " << row.name << "\n";
    os << "  BOPs    " << to_string(row.bops) << " (" << with_unit(to_double(row.bops)) << ")\n";
    os << "  energy  " << std::setprecision(17) << row.energy_pj << " pJ ("
       << std::setprecision(6) << row.energy_pj * 1e-9 << " mJ)\n";
    os << "  " << std::setw(6) << "bits_a" << ' ' << std::setw(6) << "bits_b" << ' ' << std::left
       << std::setw(8) << "kind" << std::right << ' ' << std::setw(16) << "count" << '\n';
    for (const auto& [k, n] : row.ops.entries())
      os << "  " << std::setw(6) << k.bits_a << ' ' << std::setw(6) << k.bits_b << ' ' << std::left
         << std::setw(8) << to_string(k.kind) << std::right << ' ' << std::setw(16) << n << '\n';
  }
  for (const auto& note : report.notes) os << "note: " << note << '\n';
  return os.str();
}

}  // namespace daq
