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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "daq/conv_spec.hpp"
#include "daq/costmodel.hpp"
#include "daq/metrics.hpp"
#include "daq/qconv.hpp"
#include "daq/quantizer.hpp"
#include "daq/random.hpp"
#include "daq/step_search.hpp"
#include "daq/step_table.hpp"
#include "daq/tensor_io.hpp"

namespace daq::cli {

using json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kIo:
    case ErrorCode::kBadMagic:
    case ErrorCode::kUnsupportedVersion:
    case ErrorCode::kUnknownDtype:
    case ErrorCode::kTruncated:
    case ErrorCode::kTrailingData:
    case ErrorCode::kNonFinite:
      return kExitIo;
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kShapeOverflow:
      return kExitShape;
    case ErrorCode::kWidthAudit:
    case ErrorCode::kOverflow:
      return kExitAudit;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kMissingStepSize:
    case ErrorCode::kUnsupported:
    case ErrorCode::kParse:
      return kExitUsage;
  }
  return kExitUsage;
}

namespace {

Shape parse_shape(const std::string& text) {
  if (text.empty()) fail(ErrorCode::kInvalidArgument, "--shape is required");
  Shape shape;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v == 0 || item.front() == '-')
      fail(ErrorCode::kInvalidArgument, "bad shape component '" + item + "'");
    shape.push_back(v);
  }
  if (shape.empty()) fail(ErrorCode::kInvalidArgument, "empty shape");
  checked_numel(shape);
  return shape;
}

Dtype parse_dtype(const std::string& text) {
  if (text == "f64") return Dtype::kFloat64;
  if (text == "f32") return Dtype::kFloat32;
  if (text == "i32") return Dtype::kInt32;
  fail(ErrorCode::kInvalidArgument, "unknown dtype '" + text + "' (f64, f32, i32)");
}

void check_bits(const RunConfig& cfg) {
  if (cfg.n < kMinBits || cfg.n > kMaxBits) fail(ErrorCode::kInvalidArgument, "--n must be in 1..8");
  if (cfg.m < kMinBits || cfg.m > kMaxBits) fail(ErrorCode::kInvalidArgument, "--m must be in 1..8");
}

StepSizeTable load_table(const RunConfig& cfg) {
  return cfg.step_table.empty() ? StepSizeTable::gaussian() : load_step_table(cfg.step_table);
}

EnergyModel load_energy(const RunConfig& cfg) {
  return cfg.energy.empty() ? EnergyModel::default_45nm() : load_energy_model(cfg.energy);
}

bool text_format(const RunConfig& cfg) {
  if (cfg.format == "text") return true;
  if (cfg.format == "json") return false;
  fail(ErrorCode::kInvalidArgument, "unknown format '" + cfg.format + "' (json, text)");
}

// Writes `body` to `path`, or to `out` when path is empty.
void emit(const std::string& body, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  f << body;
  if (!f) fail(ErrorCode::kIo, "write to '" + path + "' failed");
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json spec_json(const ConvSpec& s) {
  return {{"C", s.in_channels}, {"Cout", s.out_channels}, {"K", s.kernel},  {"H", s.height},
          {"W", s.width},       {"padding", to_string(s.padding)},          {"n", s.bits},
          {"m", s.qq_bits}};
}

std::string spec_text(const ConvSpec& s) {
  std::ostringstream os;
  os << "spec C=" << s.in_channels << " Cout=" << s.out_channels << " K=" << s.kernel << " H=" << s.height
     << " W=" << s.width << " padding=" << to_string(s.padding) << " n=" << s.bits << " m=" << s.qq_bits << '\n';
  return os.str();
}

json overhead_json(const ConvSpec& s) {
  const CostBreakdown o = transform_overhead(s.in_channels, s.height, s.width, s.kernel, s.out_channels);
  json j;
  for (const auto& [name, ledger] : o.stages) j[name] = ledger.total_ops();
  return j;
}

std::string overhead_text(const ConvSpec& s) {
  const CostBreakdown o = transform_overhead(s.in_channels, s.height, s.width, s.kernel, s.out_channels);
  std::ostringstream os;
  for (const auto& [name, ledger] : o.stages) os << "overhead " << name << ' ' << ledger.total_ops() << " FP ops\n";
  return os.str();
}

ConvSpec preset_spec(const std::string& name) {
  if (name == "table-s1") return ConvSpec::table_s1();
  fail(ErrorCode::kInvalidArgument, "unknown preset '" + name + "' (table-s1)");
}

json check_json(const CompareReport& r, double deviation, const std::string& against) {
  json j = to_json(r);
  j["against"] = against;
  j["max_relative_deviation"] = deviation;
  return j;
}

std::string check_text(const CompareReport& r, double deviation, const std::string& against) {
  return "check against " + against + "\n" + render_text(r) + "max_relative_deviation " +
         format_double(deviation) + "\n";
}

}  // namespace

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const Shape shape = parse_shape(cfg.shape);
  const Distribution dist = parse_distribution(cfg.dist);
  const Dtype dtype = parse_dtype(cfg.dtype);
  if (cfg.output.empty()) fail(ErrorCode::kInvalidArgument, "-o is required");
  const Tensor t = generate(shape, cfg.seed, dist);
  const auto bytes = encode_tensor(t, dtype);
  std::ofstream f(cfg.output, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::kIo, "cannot open '" + cfg.output + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) fail(ErrorCode::kIo, "write to '" + cfg.output + "' failed");
  std::ostringstream os;
  os << cfg.output << " fnv1a64=" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes) << '\n';
  out << os.str();
  return kExitOk;
}

int cmd_quantize(const RunConfig& cfg, std::ostream& out) {
  check_bits(cfg);
  if (cfg.input.empty()) fail(ErrorCode::kInvalidArgument, "--input is required");
  const StepSizeTable table = load_table(cfg);
  const Tensor x = read_tensor(cfg.input);
  json j;
  j["bits"] = cfg.n;
  j["step"] = table.step(cfg.n);
  if (cfg.kind == "feature") {
    const QuantizedFeature q = quantize_feature(x, cfg.n, table, cfg.post_relu);
    if (!cfg.output.empty())
      write_tensor(Tensor(q.shape(), {q.codes.begin(), q.codes.end()}), cfg.output, Dtype::kInt32);
    j["kind"] = "feature";
    j["post_relu"] = cfg.post_relu;
    auto channels = json::array();
    for (const auto& p : q.params)
      channels.push_back({{"mean", p.mean}, {"stddev", p.stddev}, {"alpha", p.alpha},
                          {"code_min", p.window.lo}, {"code_max", p.window.hi}});
    j["channels"] = std::move(channels);
    j["reconstruction"] = to_json(compare(dequantize_feature(q), x, cfg.peak));
  } else if (cfg.kind == "weight") {
    const QuantizedWeight q = quantize_weight(x, cfg.n, table, parse_granularity(cfg.granularity));
    if (!cfg.output.empty())
      write_tensor(Tensor(q.shape(), {q.codes.begin(), q.codes.end()}), cfg.output, Dtype::kInt32);
    j["kind"] = "weight";
    j["granularity"] = to_string(q.granularity);
    j["scales"] = q.scales;
    j["reconstruction"] = to_json(compare(dequantize_weight(q), x, cfg.peak));
  } else {
    fail(ErrorCode::kInvalidArgument, "--kind must be feature or weight");
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_cost(const RunConfig& cfg, std::ostream& out) {
  check_bits(cfg);
  const bool text = text_format(cfg);
  ConvSpec spec;
  if (!cfg.preset.empty()) {
    spec = preset_spec(cfg.preset);
  } else {
    if (!cfg.C || !cfg.Cout || !cfg.K || !cfg.H || !cfg.W)
      fail(ErrorCode::kInvalidArgument, "cost needs --preset or all of --C --Cout --K --H --W");
    spec.in_channels = cfg.C;
    spec.out_channels = cfg.Cout;
    spec.kernel = cfg.K;
    spec.height = cfg.H;
    spec.width = cfg.W;
    spec.padding = parse_padding(cfg.padding);
    spec.bits = cfg.n;
    spec.qq_bits = cfg.m;
  }
  spec.validate();
  const EnergyModel model = load_energy(cfg);
  const CostReport report = make_report({{"elementwise", elementwise_cost(spec)},
                                         {"channelwise", channelwise_cost(spec)},
                                         {"qq", qq_cost(spec)}},
                                        model, cost_conventions());
  if (text) {
    emit(spec_text(spec) + render_text(report) + overhead_text(spec), cfg.output, out);
  } else {
    json j;
    j["spec"] = spec_json(spec);
    j["cost"] = to_json(report);
    j["overhead"] = overhead_json(spec);
    emit(j.dump(2) + "\n", cfg.output, out);
  }
  return kExitOk;
}

int cmd_conv(const RunConfig& cfg, std::ostream& out) {
  check_bits(cfg);
  const bool text = text_format(cfg);
  const Pipeline pipeline = parse_pipeline(cfg.pipeline);
  const Padding padding = parse_padding(cfg.padding);
  const EnergyModel model = load_energy(cfg);
  const StepSizeTable table = load_table(cfg);
  if (cfg.weights.size() > 1) fail(ErrorCode::kInvalidArgument, "conv takes a single --weight");

  json j;
  std::string body;
  ConvSpec spec;
  const bool analytic = cfg.input.empty() && cfg.weights.empty();
  if (analytic) {
    if (cfg.preset.empty()) fail(ErrorCode::kInvalidArgument, "conv needs --input and --weight, or --shape-preset");
    spec = preset_spec(cfg.preset);
    spec.bits = cfg.n;
    spec.qq_bits = cfg.m;
    spec.padding = padding;
    if (cfg.check) fail(ErrorCode::kInvalidArgument, "--check needs input tensors");
  } else {
    if (cfg.input.empty() || cfg.weights.empty())
      fail(ErrorCode::kInvalidArgument, "conv needs both --input and --weight");
    const Tensor x = read_tensor(cfg.input);
    const Tensor w = read_tensor(cfg.weights.front());
    spec = spec_for(x, w, padding, cfg.n, cfg.m);
    if (!cfg.preset.empty()) {
      ConvSpec want = preset_spec(cfg.preset);
      want.bits = spec.bits;
      want.qq_bits = spec.qq_bits;
      want.padding = spec.padding;
      if (!(want == spec)) fail(ErrorCode::kShapeMismatch, "input tensors do not match preset " + cfg.preset);
    }

    PipelineOutput result;
    std::optional<QuantizedFeature> qx;
    std::optional<QuantizedWeight> qw;
    if (pipeline == Pipeline::kReference) {
      result = {conv_reference(x, w, spec), reference_cost(spec), {}};
    } else {
      qx = quantize_feature(x, cfg.n, table, cfg.post_relu);
      qw = quantize_weight(w, cfg.n, table, parse_granularity(cfg.granularity));
      switch (pipeline) {
        case Pipeline::kElementwise: result = conv_elementwise(*qx, *qw, spec); break;
        case Pipeline::kChannelwise: result = conv_channelwise(*qx, *qw, spec); break;
        case Pipeline::kQq:
          result = conv_qq(*qx, *qw, quantize_qq(qx->means(), qx->stddevs(), cfg.m, table), spec);
          break;
        case Pipeline::kReference: break;
      }
    }

    if (cfg.check) {
      json checks = json::array();
      auto add_check = [&](const Tensor& oracle, const std::string& name) {
        const CompareReport r = compare(result.y, oracle, cfg.peak);
        const double dev = max_relative_deviation(result.y, oracle);
        checks.push_back(check_json(r, dev, name));
        body += check_text(r, dev, name);
      };
      if (qx) {
        add_check(conv_elementwise(*qx, *qw, spec).y, "elementwise");
        if (pipeline == Pipeline::kQq) {
          const QQParams qq = quantize_qq(qx->means(), qx->stddevs(), cfg.m, table);
          add_check(conv_channelwise(with_channel_params(*qx, qq.means(), qq.stddevs()), *qw, spec).y,
                    "reconstructed-parameters");
        }
      }
      add_check(conv_reference(x, w, spec), "reference");
      j["check"] = std::move(checks);
    }
    if (!cfg.output.empty()) write_tensor(result.y, cfg.output);
  }

  const CostReport report = make_report({{to_string(pipeline), pipeline_cost(pipeline, spec)}}, model,
                                        analytic ? std::vector<std::string>{"analytic: no tensors executed"}
                                                 : std::vector<std::string>{});
  if (text) {
    emit(spec_text(spec) + render_text(report) + body, cfg.report, out);
  } else {
    json r;
    r["pipeline"] = to_string(pipeline);
    r["spec"] = spec_json(spec);
    r["cost"] = to_json(report);
    if (j.contains("check")) r["check"] = j["check"];
    emit(r.dump(2) + "\n", cfg.report, out);
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.input.empty() || cfg.other.empty()) fail(ErrorCode::kInvalidArgument, "compare needs two tensors");
  const bool text = text_format(cfg);
  const Tensor a = read_tensor(cfg.input);
  const Tensor b = read_tensor(cfg.other);
  const CompareReport r = compare(a, b, cfg.peak);
  emit(text ? render_text(r) : to_json(r).dump(2) + "\n", cfg.output, out);
  if (cfg.min_psnr && r.psnr_db < *cfg.min_psnr) return kExitBelowThreshold;
  return kExitOk;
}

int cmd_block(const RunConfig& cfg, std::ostream& out) {
  check_bits(cfg);
  const bool text = text_format(cfg);
  if (cfg.input.empty() || cfg.weights.empty())
    fail(ErrorCode::kInvalidArgument, "block needs --input and at least one --weight");
  if (!cfg.relu.empty() && cfg.relu.size() != cfg.weights.size())
    fail(ErrorCode::kInvalidArgument, "--relu needs one flag per layer");
  const StepSizeTable table = load_table(cfg);
  const EnergyModel model = load_energy(cfg);

  const Tensor x = read_tensor(cfg.input);
  std::vector<BlockLayer> layers;
  for (std::size_t i = 0; i < cfg.weights.size(); ++i)
    layers.push_back({read_tensor(cfg.weights[i]), !cfg.relu.empty() && cfg.relu[i] != 0});

  BlockOptions options;
  options.bits = cfg.n;
  options.qq_bits = cfg.m;
  options.table = &table;
  options.pipeline = parse_pipeline(cfg.pipeline);
  options.granularity = parse_granularity(cfg.granularity);
  options.padding = parse_padding(cfg.padding);
  options.input_post_relu = cfg.post_relu;
  const BlockResult result = run_block(x, layers, options);

  BlockOptions reference_options = options;
  reference_options.pipeline = Pipeline::kReference;
  const Tensor reference = run_block(x, layers, reference_options).y;
  const CompareReport cmp = compare(result.y, reference, cfg.peak);
  if (!cfg.output.empty()) write_tensor(result.y, cfg.output);

  const CostReport report = make_report({{to_string(options.pipeline), result.cost}}, model);
  json layer_json = json::array();
  std::ostringstream layer_text;
  for (std::size_t i = 0; i < result.layers.size(); ++i) {
    const LayerSummary& l = result.layers[i];
    json lj;
    lj["spec"] = spec_json(l.spec);
    lj["post_relu_input"] = l.post_relu_input;
    lj["alpha"] = l.alphas;
    lj["min_level"] = l.min_levels;
    lj["level_step"] = l.level_steps;
    layer_json.push_back(std::move(lj));
    layer_text << "layer " << i << " post_relu_input=" << (l.post_relu_input ? "true" : "false");
    if (!l.alphas.empty()) {
      const auto [lo, hi] = std::minmax_element(l.alphas.begin(), l.alphas.end());
      layer_text << " alpha_min=" << format_double(*lo) << " alpha_max=" << format_double(*hi);
    }
    layer_text << '\n';
  }

  if (text) {
    emit(layer_text.str() + render_text(report) + "compare against reference\n" + render_text(cmp), cfg.report,
         out);
  } else {
    json j;
    j["pipeline"] = to_string(options.pipeline);
    j["layers"] = std::move(layer_json);
    j["cost"] = to_json(report);
    j["compare_reference"] = to_json(cmp);
    emit(j.dump(2) + "\n", cfg.report, out);
  }
  return kExitOk;
}

int cmd_steps(const RunConfig& cfg, std::ostream& out) {
  const UnitDistribution dist = parse_unit_distribution(cfg.dist);
  std::vector<int> bits = cfg.bits;
  if (bits.empty())
    for (int b = kMinBits; b <= kMaxBits; ++b) bits.push_back(b);
  emit(format_step_table(derive_step_table(dist, bits)), cfg.output, out);
  return kExitOk;
}

namespace {

void add_quant_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "feature/weight bit-width (1-8)")->capture_default_str();
  sub->add_option("--m", cfg.m, "QQ bit-width (1-8)")->capture_default_str();
  sub->add_option("--step-table", cfg.step_table, "step-size table file");
  sub->add_option("--granularity", cfg.granularity, "layer|output-channel|input-channel|kernel")
      ->capture_default_str();
  sub->add_flag("--post-relu", cfg.post_relu, "input feature map follows a ReLU");
}

void add_conv_flags(CLI::App* sub, RunConfig& cfg) {
  add_quant_flags(sub, cfg);
  sub->add_option("--pipeline", cfg.pipeline, "reference|elementwise|channelwise|qq")->capture_default_str();
  sub->add_option("--padding", cfg.padding, "same|valid")->capture_default_str();
  sub->add_option("--energy", cfg.energy, "energy anchor file");
  sub->add_option("--format", cfg.format, "json|text")->capture_default_str();
  sub->add_option("--peak", cfg.peak, "PSNR peak value")->capture_default_str();
  sub->add_option("--report", cfg.report, "write the report here instead of stdout");
  sub->add_option("-o,--output", cfg.output, "output tensor path");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Distribution-aware quantized convolution toolkit", "daq"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a DAQT tensor");
  gen->add_option("--shape", cfg.shape, "comma-separated dims")->required();
  gen->add_option("--dist", cfg.dist, "gaussian[:mean,sd] | uniform:lo,hi | constant:v")->capture_default_str();
  gen->add_option("--seed", cfg.seed)->capture_default_str();
  gen->add_option("--dtype", cfg.dtype, "f64|f32|i32")->capture_default_str();
  gen->add_option("-o,--output", cfg.output, "output path")->required();

  auto* quant = app.add_subcommand("quantize", "quantize a feature map or weight tensor");
  quant->add_option("-i,--input", cfg.input)->required();
  quant->add_option("--kind", cfg.kind, "feature|weight")->capture_default_str();
  quant->add_option("-o,--output", cfg.output, "int32 code tensor path");
  quant->add_option("--peak", cfg.peak)->capture_default_str();
  add_quant_flags(quant, cfg);

  auto* conv = app.add_subcommand("conv", "run one convolution pipeline");
  conv->add_option("-i,--input", cfg.input, "feature map C x H x W");
  conv->add_option("-w,--weight", cfg.weights, "weight C x Cout x K x K");
  conv->add_option("--shape-preset", cfg.preset, "table-s1");
  conv->add_flag("--check", cfg.check, "compare against the element-wise and reference pipelines");
  add_conv_flags(conv, cfg);

  auto* cost = app.add_subcommand("cost", "analytic cost of the three pipelines");
  cost->add_option("--preset", cfg.preset, "table-s1");
  cost->add_option("--C", cfg.C);
  cost->add_option("--Cout", cfg.Cout);
  cost->add_option("--K", cfg.K);
  cost->add_option("--H", cfg.H);
  cost->add_option("--W", cfg.W);
  cost->add_option("--n", cfg.n)->capture_default_str();
  cost->add_option("--m", cfg.m)->capture_default_str();
  cost->add_option("--padding", cfg.padding)->capture_default_str();
  cost->add_option("--energy", cfg.energy, "energy anchor file");
  cost->add_option("--format", cfg.format, "json|text")->capture_default_str();
  cost->add_option("-o,--output", cfg.output, "report path");

  auto* cmp = app.add_subcommand("compare", "MSE / PSNR / max-abs between two tensors");
  cmp->add_option("a", cfg.input)->required();
  cmp->add_option("b", cfg.other)->required();
  cmp->add_option("--peak", cfg.peak)->capture_default_str();
  cmp->add_option("--min-psnr", cfg.min_psnr, "exit 1 when PSNR falls below this");
  cmp->add_option("--format", cfg.format, "json|text")->capture_default_str();
  cmp->add_option("-o,--output", cfg.output, "report path");

  auto* block = app.add_subcommand("block", "run a chain of convolutions");
  block->add_option("-i,--input", cfg.input)->required();
  block->add_option("-w,--weight", cfg.weights, "one weight tensor per layer, in order")->required();
  block->add_option("--relu", cfg.relu, "per-layer 0/1: apply ReLU after the layer")->delimiter(',');
  add_conv_flags(block, cfg);

  auto* steps = app.add_subcommand("steps", "derive an MSE-optimal uniform step-size table");
  steps->add_option("--dist", cfg.dist, "gaussian|laplace|uniform")->capture_default_str();
  steps->add_option("--bits", cfg.bits, "bit-widths (default 1-8)")->delimiter(',');
  steps->add_option("-o,--output", cfg.output, "table path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    cfg.subcommand = name;
    if (name == "gen") return cmd_gen(cfg, out);
    if (name == "quantize") return cmd_quantize(cfg, out);
    if (name == "conv") return cmd_conv(cfg, out);
    if (name == "cost") return cmd_cost(cfg, out);
    if (name == "compare") return cmd_compare(cfg, out);
    if (name == "block") return cmd_block(cfg, out);
    if (name == "steps") return cmd_steps(cfg, out);
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAudit;
  }
}

}  // namespace daq::cli
