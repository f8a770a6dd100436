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

#include "daq/step_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "daq/error.hpp"

namespace daq {
namespace {

// Partial moments G_k(x) = integral_0^x t^k f(t) dt of the unit-variance
// density on the positive half-line; x may be +inf.
struct HalfMoments {
  double m0, m1, m2;
};

HalfMoments half_moments(UnitDistribution dist, double x) {
  switch (dist) {
    case UnitDistribution::kGaussian: {
      const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
      if (std::isinf(x)) return {0.5, inv_sqrt_2pi, 0.5};
      const double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
      const double m0 = 0.5 * std::erf(x / std::numbers::sqrt2);
      return {m0, inv_sqrt_2pi - pdf, m0 - x * pdf};
    }
    case UnitDistribution::kLaplace: {
      const double b = 1.0 / std::numbers::sqrt2;
      if (std::isinf(x)) return {0.5, 0.5 * b, b * b};
      const double e = std::exp(-x / b);
      return {0.5 * (1.0 - e), 0.5 * (b - e * (x + b)),
              0.5 * (2.0 * b * b - e * (x * x + 2.0 * b * x + 2.0 * b * b))};
    }
    case UnitDistribution::kUniform: {
      const double edge = std::sqrt(3.0);
      const double t = std::min(x, edge);
      const double f = 1.0 / (2.0 * edge);
      return {f * t, f * t * t / 2.0, f * t * t * t / 3.0};
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown distribution");
}

void check_bits(int bits) {
  if (bits < 1 || bits > 16) fail(ErrorCode::kInvalidArgument, "bit-width out of range");
}

}  // namespace

std::string to_string(UnitDistribution dist) {
  switch (dist) {
    case UnitDistribution::kGaussian: return "gaussian";
    case UnitDistribution::kLaplace: return "laplace";
    case UnitDistribution::kUniform: return "uniform";
  }
  return "unknown";
}

UnitDistribution parse_unit_distribution(const std::string& name) {
  if (name == "gaussian") return UnitDistribution::kGaussian;
  if (name == "laplace") return UnitDistribution::kLaplace;
  if (name == "uniform") return UnitDistribution::kUniform;
  fail(ErrorCode::kParse, "unknown distribution '" + name + "'");
}

double uniform_quantize(double x, int bits, double step) noexcept {
  const double half_levels = std::ldexp(1.0, bits - 1);
  const double k = std::clamp(std::floor(x / step), -half_levels, half_levels - 1.0);
  return (k + 0.5) * step;
}

double uniform_quantizer_mse(UnitDistribution dist, int bits, double step) {
  check_bits(bits);
  if (!(step > 0.0)) fail(ErrorCode::kInvalidArgument, "step must be positive");
  const long half_levels = 1L << (bits - 1);
  double mse = 0.0;
  HalfMoments lo = half_moments(dist, 0.0);
  for (long k = 0; k < half_levels; ++k) {
    const double upper = (k + 1 == half_levels) ? std::numeric_limits<double>::infinity()
                                                : static_cast<double>(k + 1) * step;
    const HalfMoments hi = half_moments(dist, upper);
    const double c = (static_cast<double>(k) + 0.5) * step;
    mse += (hi.m2 - lo.m2) - 2.0 * c * (hi.m1 - lo.m1) + c * c * (hi.m0 - lo.m0);
    lo = hi;
  }
  return 2.0 * mse;  // symmetric density, symmetric quantizer
}

double uniform_quantizer_mse(std::span<const double> samples, int bits, double step) noexcept {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double x : samples) {
    const double e = x - uniform_quantize(x, bits, step);
    acc += e * e;
  }
  return acc / static_cast<double>(samples.size());
}

double optimal_uniform_step(UnitDistribution dist, int bits) {
  check_bits(bits);
  constexpr int kGrid = 4000;
  const double lo = std::log(1e-3), hi = std::log(4.0);
  auto at = [&](int i) { return std::exp(lo + (hi - lo) * i / kGrid); };
  int best = 0;
  double best_mse = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double m = uniform_quantizer_mse(dist, bits, at(i));
    if (m < best_mse) {
      best_mse = m;
      best = i;
    }
  }
  double a = at(std::max(best - 1, 0));
  double b = at(std::min(best + 1, kGrid));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = uniform_quantizer_mse(dist, bits, c), fd = uniform_quantizer_mse(dist, bits, d);
  for (int iter = 0; iter < 200 && (b - a) > 1e-12 * b; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = uniform_quantizer_mse(dist, bits, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = uniform_quantizer_mse(dist, bits, d);
    }
  }
  return 0.5 * (a + b);
}

StepSizeTable derive_step_table(UnitDistribution dist, std::span<const int> bit_widths) {
  std::map<int, double> entries;
  for (int bits : bit_widths) entries[bits] = optimal_uniform_step(dist, bits);
  return StepSizeTable(to_string(dist) + "-derived", std::move(entries));
}

}  // namespace daq
