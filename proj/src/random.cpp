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

#include "daq/random.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "daq/error.hpp"

namespace daq {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto end = comma == std::string::npos ? text.size() : comma;
    double v = 0.0;
    const auto* first = text.data() + pos;
    const auto* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
      fail(ErrorCode::kParse, "bad number in distribution spec: '" + text + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::next_unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Xoshiro256::next_gaussian() noexcept {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_unit() - 1.0;
    v = 2.0 * next_unit() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

Distribution parse_distribution(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const bool has_args = colon != std::string::npos;
  const auto args = has_args ? parse_numbers(text.substr(colon + 1)) : std::vector<double>{};
  if (name == "gaussian" || name == "normal") {
    if (!has_args) return Gaussian{};
    if (args.size() != 2) fail(ErrorCode::kParse, "gaussian takes MEAN,SD");
    if (!(args[1] >= 0.0)) fail(ErrorCode::kInvalidArgument, "gaussian sd must be >= 0");
    return Gaussian{args[0], args[1]};
  }
  if (name == "uniform") {
    if (!has_args) return Uniform{};
    if (args.size() != 2) fail(ErrorCode::kParse, "uniform takes LO,HI");
    if (!(args[0] <= args[1])) fail(ErrorCode::kInvalidArgument, "uniform needs lo <= hi");
    return Uniform{args[0], args[1]};
  }
  if (name == "constant") {
    if (args.size() != 1) fail(ErrorCode::kParse, "constant takes one value");
    return Constant{args[0]};
  }
  fail(ErrorCode::kParse, "unknown distribution '" + name + "'");
}

std::string to_string(const Distribution& dist) {
  std::ostringstream os;
  os.precision(17);
  if (auto* g = std::get_if<Gaussian>(&dist)) os << "gaussian:" << g->mean << ',' << g->stddev;
  if (auto* u = std::get_if<Uniform>(&dist)) os << "uniform:" << u->lo << ',' << u->hi;
  if (auto* c = std::get_if<Constant>(&dist)) os << "constant:" << c->value;
  return os.str();
}

Tensor generate(const Shape& shape, std::uint64_t seed, const Distribution& dist) {
  const auto n = checked_numel(shape);
  std::vector<double> data(n);
  Xoshiro256 rng(seed);
  if (auto* g = std::get_if<Gaussian>(&dist)) {
    if (!(g->stddev >= 0.0) || !std::isfinite(g->mean) || !std::isfinite(g->stddev))
      fail(ErrorCode::kInvalidArgument, "gaussian needs finite mean and sd >= 0");
    for (auto& v : data) v = g->mean + g->stddev * rng.next_gaussian();
  } else if (auto* u = std::get_if<Uniform>(&dist)) {
    if (!(u->lo <= u->hi) || !std::isfinite(u->lo) || !std::isfinite(u->hi))
      fail(ErrorCode::kInvalidArgument, "uniform needs finite lo <= hi");
    for (auto& v : data) v = u->lo + (u->hi - u->lo) * rng.next_unit();
  } else {
    const double c = std::get<Constant>(dist).value;
    for (auto& v : data) v = c;
  }
  return Tensor(shape, std::move(data));
}

}  // namespace daq
