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

#include "daq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <sstream>
#include <iomanip>

#include "daq/error.hpp"

namespace daq {
namespace {

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape())
    fail(ErrorCode::kShapeMismatch,
         "cannot compare " + shape_to_string(a.shape()) + " with " + shape_to_string(b.shape()));
}

}  // namespace

double psnr_db(double mse, double peak) {
  if (mse < 1e-30) return kPsnrCapDb;
  return std::min(kPsnrCapDb, 10.0 * std::log10(peak * peak / mse));
}

CompareReport compare(const Tensor& a, const Tensor& b, double peak) {
  require_same_shape(a, b);
  if (!(peak > 0.0) || !std::isfinite(peak)) fail(ErrorCode::kInvalidArgument, "peak must be positive");
  CompareReport r;
  r.peak = peak;
  const auto da = a.data(), db = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = da[i] - db[i];
    sum += d * d;
    r.max_abs = std::max(r.max_abs, std::abs(d));
  }
  r.mse = da.empty() ? 0.0 : sum / static_cast<double>(da.size());
  r.psnr_db = psnr_db(r.mse, peak);
  return r;
}

double max_relative_deviation(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  double diff = 0.0, scale = 0.0;
  const auto da = a.data(), db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    diff = std::max(diff, std::abs(da[i] - db[i]));
    scale = std::max(scale, std::abs(db[i]));
  }
  if (diff == 0.0) return 0.0;
  if (scale == 0.0) return std::numeric_limits<double>::infinity();
  return diff / scale;
}

nlohmann::ordered_json to_json(const CompareReport& report) {
  return {{"mse", report.mse}, {"psnr_db", report.psnr_db}, {"max_abs", report.max_abs}, {"peak", report.peak}};
}

std::string render_text(const CompareReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "mse      " << report.mse << "\n"
      << "psnr_db  " << report.psnr_db << "\n"
      << "max_abs  " << report.max_abs << "\n"
      << "peak     " << report.peak << "\n";
  return out.str();
}

}  // namespace daq
