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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cli.hpp"
#include "daq/costmodel.hpp"
#include "daq/error.hpp"
#include "daq/metrics.hpp"
#include "daq/qconv.hpp"
#include "daq/quantizer.hpp"
#include "daq/random.hpp"
#include "daq/step_table.hpp"
#include "daq/tensor_io.hpp"

namespace py = pybind11;
using namespace daq;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Tensor to_tensor(const Array& a) {
  Shape shape(a.shape(), a.shape() + a.ndim());
  return Tensor(std::move(shape), std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Tensor& t) {
  std::vector<py::ssize_t> shape(t.shape().begin(), t.shape().end());
  Array out(shape);
  std::copy(t.data().begin(), t.data().end(), out.mutable_data());
  return out;
}

template <typename Int>
py::array_t<Int> int_array(const std::vector<Int>& v, const Shape& shape) {
  std::vector<py::ssize_t> dims(shape.begin(), shape.end());
  py::array_t<Int> out(dims);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

const StepSizeTable& table_or_default(const std::optional<StepSizeTable>& t) {
  return t ? *t : StepSizeTable::gaussian();
}

py::object json_to_py(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

py::dict cost_dict(const CostBreakdown& cost, const std::string& name) {
  const CostReport r = make_report({{name, cost}}, EnergyModel::default_45nm());
  return json_to_py(render_json(r)).cast<py::dict>()["pipelines"].cast<py::list>()[0].cast<py::dict>();
}

py::dict pipeline_result(const PipelineOutput& out, Pipeline p) {
  py::dict d;
  d["y"] = to_array(out.y);
  d["cost"] = cost_dict(out.cost, to_string(p));
  py::list violations;
  for (const auto& v : out.audit.violations())
    violations.append(py::make_tuple(std::string(to_string(v.site)), v.planned_bits, v.max_abs));
  d["audit_violations"] = violations;
  return d;
}

ConvSpec spec_from(const QuantizedFeature& qx, const QuantizedWeight& qw, const std::string& padding, int m) {
  return spec_for(qx, qw, parse_padding(padding), m);
}

}  // namespace

PYBIND11_MODULE(_daq, m) {
  m.doc() = "Distribution-aware low-bit quantization and convolution";

  static py::exception<Error> daq_error(m, "DaqError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(daq_error.ptr(), py::make_tuple(std::string(to_string(e.code())), e.what()).ptr());
    }
  });

  // Tensors and files.
  m.def("read_tensor", [](const std::filesystem::path& p) { return to_array(read_tensor(p)); }, py::arg("path"));
  m.def(
      "write_tensor",
      [](const Array& a, const std::filesystem::path& p, const std::string& dtype) {
        const Dtype d = dtype == "f64" ? Dtype::kFloat64 : dtype == "f32" ? Dtype::kFloat32
                        : dtype == "i32" ? Dtype::kInt32
                                         : throw Error(ErrorCode::kInvalidArgument, "unknown dtype '" + dtype + "'");
        write_tensor(to_tensor(a), p, d);
      },
      py::arg("array"), py::arg("path"), py::arg("dtype") = "f64");
  m.def(
      "generate",
      [](const Shape& shape, std::uint64_t seed, const std::string& dist) {
        return to_array(generate(shape, seed, parse_distribution(dist)));
      },
      py::arg("shape"), py::arg("seed") = 0, py::arg("dist") = "gaussian");

  // Step sizes.
  py::class_<StepSizeTable>(m, "StepSizeTable")
      .def_static("gaussian", &StepSizeTable::gaussian)
      .def_static("load", [](const std::filesystem::path& p) { return load_step_table(p); })
      .def_static("parse", &parse_step_table)
      .def("step", &StepSizeTable::step)
      .def_property_readonly("distribution", &StepSizeTable::distribution)
      .def_property_readonly("entries", &StepSizeTable::entries)
      .def("__str__", &format_step_table);
  m.def("step_size", [](int n) { return step_size(n); }, py::arg("bits"));

  // Quantizers.
  py::class_<CodeWindow>(m, "CodeWindow").def_readonly("lo", &CodeWindow::lo).def_readonly("hi", &CodeWindow::hi);
  py::class_<FeatureChannel>(m, "FeatureChannel")
      .def_readonly("mean", &FeatureChannel::mean)
      .def_readonly("stddev", &FeatureChannel::stddev)
      .def_readonly("alpha", &FeatureChannel::alpha)
      .def_readonly("window", &FeatureChannel::window);
  py::class_<QuantizedFeature>(m, "QuantizedFeature")
      .def_readonly("bits", &QuantizedFeature::bits)
      .def_readonly("step", &QuantizedFeature::step)
      .def_readonly("post_relu", &QuantizedFeature::post_relu)
      .def_readonly("params", &QuantizedFeature::params)
      .def_property_readonly("codes", [](const QuantizedFeature& q) { return int_array(q.codes, q.shape()); })
      .def_property_readonly("means", &QuantizedFeature::means)
      .def_property_readonly("stddevs", &QuantizedFeature::stddevs);
  py::class_<QuantizedWeight>(m, "QuantizedWeight")
      .def_readonly("bits", &QuantizedWeight::bits)
      .def_readonly("step", &QuantizedWeight::step)
      .def_readonly("scales", &QuantizedWeight::scales)
      .def_property_readonly("granularity", [](const QuantizedWeight& q) { return to_string(q.granularity); })
      .def_property_readonly("codes", [](const QuantizedWeight& q) { return int_array(q.codes, q.shape()); });
  py::class_<QQParams>(m, "QQParams")
      .def_readonly("bits", &QQParams::bits)
      .def_readonly("mean_codes", &QQParams::mean_codes)
      .def_readonly("stddev_codes", &QQParams::stddev_codes)
      .def_property_readonly("means", &QQParams::means)
      .def_property_readonly("stddevs", &QQParams::stddevs);

  m.def(
      "quantize_feature",
      [](const Array& x, int n, bool post_relu, const std::optional<StepSizeTable>& table) {
        return quantize_feature(to_tensor(x), n, table_or_default(table), post_relu);
      },
      py::arg("x"), py::arg("bits"), py::arg("post_relu") = false, py::arg("table") = py::none());
  m.def("dequantize_feature", [](const QuantizedFeature& q) { return to_array(dequantize_feature(q)); });
  m.def(
      "quantize_weight",
      [](const Array& w, int n, const std::string& granularity, const std::optional<StepSizeTable>& table) {
        return quantize_weight(to_tensor(w), n, table_or_default(table), parse_granularity(granularity));
      },
      py::arg("w"), py::arg("bits"), py::arg("granularity") = "layer", py::arg("table") = py::none());
  m.def("dequantize_weight", [](const QuantizedWeight& q) { return to_array(dequantize_weight(q)); });
  m.def(
      "quantize_qq",
      [](const std::vector<double>& means, const std::vector<double>& stddevs, int m_bits,
         const std::optional<StepSizeTable>& table) {
        return quantize_qq(means, stddevs, m_bits, table_or_default(table));
      },
      py::arg("means"), py::arg("stddevs"), py::arg("bits"), py::arg("table") = py::none());
  m.def(
      "with_channel_params",
      [](const QuantizedFeature& q, const std::vector<double>& means, const std::vector<double>& stddevs) {
        return with_channel_params(q, means, stddevs);
      },
      py::arg("qx"), py::arg("means"), py::arg("stddevs"));

  // Convolutions.
  m.def(
      "conv_reference",
      [](const Array& x, const Array& w, const std::string& padding) {
        const Tensor tx = to_tensor(x), tw = to_tensor(w);
        return to_array(conv_reference(tx, tw, spec_for(tx, tw, parse_padding(padding))));
      },
      py::arg("x"), py::arg("w"), py::arg("padding") = "same");
  m.def(
      "conv_elementwise",
      [](const QuantizedFeature& qx, const QuantizedWeight& qw, const std::string& padding) {
        return pipeline_result(conv_elementwise(qx, qw, spec_from(qx, qw, padding, 4)), Pipeline::kElementwise);
      },
      py::arg("qx"), py::arg("qw"), py::arg("padding") = "same");
  m.def(
      "conv_channelwise",
      [](const QuantizedFeature& qx, const QuantizedWeight& qw, const std::string& padding) {
        return pipeline_result(conv_channelwise(qx, qw, spec_from(qx, qw, padding, 4)), Pipeline::kChannelwise);
      },
      py::arg("qx"), py::arg("qw"), py::arg("padding") = "same");
  m.def(
      "conv_qq",
      [](const QuantizedFeature& qx, const QuantizedWeight& qw, const QQParams& qq, const std::string& padding) {
        return pipeline_result(conv_qq(qx, qw, qq, spec_from(qx, qw, padding, qq.bits)), Pipeline::kQq);
      },
      py::arg("qx"), py::arg("qw"), py::arg("qq"), py::arg("padding") = "same");
  m.def(
      "run_block",
      [](const Array& x, const std::vector<Array>& weights, const std::vector<bool>& relu_after,
         const std::string& pipeline, int n, int m_bits, bool input_post_relu) {
        if (weights.size() != relu_after.size())
          throw Error(ErrorCode::kInvalidArgument, "one relu flag per layer is required");
        std::vector<BlockLayer> layers;
        for (std::size_t i = 0; i < weights.size(); ++i) layers.push_back({to_tensor(weights[i]), relu_after[i]});
        BlockOptions o;
        o.pipeline = parse_pipeline(pipeline);
        o.bits = n;
        o.qq_bits = m_bits;
        o.input_post_relu = input_post_relu;
        const BlockResult r = run_block(to_tensor(x), layers, o);
        py::dict d;
        d["y"] = to_array(r.y);
        d["cost"] = cost_dict(r.cost, pipeline);
        py::list summaries;
        for (const auto& l : r.layers) {
          py::dict s;
          s["post_relu_input"] = l.post_relu_input;
          s["alpha"] = l.alphas;
          s["min_level"] = l.min_levels;
          s["level_step"] = l.level_steps;
          summaries.append(s);
        }
        d["layers"] = summaries;
        return d;
      },
      py::arg("x"), py::arg("weights"), py::arg("relu_after"), py::arg("pipeline") = "channelwise",
      py::arg("bits") = 2, py::arg("qq_bits") = 4, py::arg("input_post_relu") = false);
  m.def("relu", [](const Array& x) { return to_array(relu(to_tensor(x))); });

  // Cost model.
  m.def(
      "cost_report",
      [](std::uint64_t C, std::uint64_t Cout, std::uint64_t K, std::uint64_t H, std::uint64_t W, int n, int m_bits,
         const std::string& padding) {
        ConvSpec s{C, Cout, K, H, W, parse_padding(padding), n, m_bits};
        s.validate();
        std::vector<PipelineCost> rows;
        for (Pipeline p : {Pipeline::kElementwise, Pipeline::kChannelwise, Pipeline::kQq})
          rows.push_back({to_string(p), pipeline_cost(p, s)});
        return json_to_py(render_json(make_report(rows, EnergyModel::default_45nm(), cost_conventions())));
      },
      py::arg("C"), py::arg("Cout"), py::arg("K"), py::arg("H"), py::arg("W"), py::arg("bits") = 2,
      py::arg("qq_bits") = 4, py::arg("padding") = "same");
  m.def(
      "transform_overhead",
      [](std::uint64_t C, std::uint64_t H, std::uint64_t W, std::uint64_t K, std::uint64_t Cout) {
        const CostBreakdown c = transform_overhead(C, H, W, K, Cout);
        py::dict d;
        for (const auto& [name, ledger] : c.stages) d[py::str(name)] = ledger.total_ops();
        return d;
      },
      py::arg("C"), py::arg("H"), py::arg("W"), py::arg("K"), py::arg("Cout"));

  // Metrics.
  m.def(
      "compare",
      [](const Array& a, const Array& b, double peak) {
        return json_to_py(to_json(compare(to_tensor(a), to_tensor(b), peak)).dump());
      },
      py::arg("a"), py::arg("b"), py::arg("peak") = kDefaultPeak);
  m.def(
      "max_relative_deviation",
      [](const Array& a, const Array& b) { return max_relative_deviation(to_tensor(a), to_tensor(b)); },
      py::arg("a"), py::arg("b"));

  // Command line, in-process.
  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
