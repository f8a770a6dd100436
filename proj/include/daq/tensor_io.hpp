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
#include <span>
#include <vector>

#include "daq/tensor.hpp"

namespace daq {

// DAQT container, little-endian throughout:
//   bytes 0..3   magic "DAQT"
//   u32          version (1)
//   u8           dtype code
//   u8           ndim (>= 1)
//   ndim x u64   shape
//   payload      row-major elements of the declared dtype
enum class Dtype : std::uint8_t { kFloat32 = 0, kFloat64 = 1, kInt32 = 2 };

inline constexpr std::uint32_t kDaqtVersion = 1;

std::size_t dtype_size(Dtype dtype);

std::vector<std::uint8_t> encode_tensor(const Tensor& t, Dtype dtype);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);

// Header-only peek, for tools that want to report the stored dtype.
Dtype peek_dtype(std::span<const std::uint8_t> bytes);

Tensor read_tensor(const std::filesystem::path& path);
void write_tensor(const Tensor& t, const std::filesystem::path& path,
                  Dtype dtype = Dtype::kFloat64);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

// 64-bit FNV-1a, used as the file checksum printed by the CLI.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

}  // namespace daq
