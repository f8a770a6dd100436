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

#include "daq/tensor_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "daq/error.hpp"

namespace daq {
namespace {

constexpr std::uint8_t kMagic[4] = {'D', 'A', 'Q', 'T'};
constexpr std::size_t kFixedHeader = 4 + 4 + 1 + 1;

template <typename U>
void put_le(std::vector<std::uint8_t>& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i)
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

template <typename U>
U get_le(const std::uint8_t* p) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(p[i]) << (8 * i);
  return v;
}

Dtype checked_dtype(std::uint8_t code) {
  if (code > static_cast<std::uint8_t>(Dtype::kInt32))
    fail(ErrorCode::kUnknownDtype, "unknown dtype code " + std::to_string(code));
  return static_cast<Dtype>(code);
}

struct Header {
  Dtype dtype;
  Shape shape;
  std::size_t payload_offset;
};

Header parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) fail(ErrorCode::kTruncated, "file shorter than the DAQT magic");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) fail(ErrorCode::kBadMagic, "missing DAQT magic");
  if (bytes.size() < kFixedHeader) fail(ErrorCode::kTruncated, "truncated DAQT header");
  const auto version = get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kDaqtVersion)
    fail(ErrorCode::kUnsupportedVersion, "unsupported DAQT version " + std::to_string(version));
  Header h{checked_dtype(bytes[8]), {}, 0};
  const std::size_t ndim = bytes[9];
  if (ndim == 0) fail(ErrorCode::kInvalidArgument, "DAQT tensors need at least one dimension");
  if (bytes.size() < kFixedHeader + 8 * ndim) fail(ErrorCode::kTruncated, "truncated DAQT shape");
  for (std::size_t i = 0; i < ndim; ++i)
    h.shape.push_back(get_le<std::uint64_t>(bytes.data() + kFixedHeader + 8 * i));
  h.payload_offset = kFixedHeader + 8 * ndim;
  return h;
}

}  // namespace

std::size_t dtype_size(Dtype dtype) {
  switch (dtype) {
    case Dtype::kFloat32: return 4;
    case Dtype::kFloat64: return 8;
    case Dtype::kInt32: return 4;
  }
  fail(ErrorCode::kUnknownDtype, "unknown dtype");
}

std::vector<std::uint8_t> encode_tensor(const Tensor& t, Dtype dtype) {
  if (t.ndim() == 0 || t.ndim() > 255) fail(ErrorCode::kInvalidArgument, "DAQT supports 1..255 dims");
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_le<std::uint32_t>(out, kDaqtVersion);
  out.push_back(static_cast<std::uint8_t>(dtype));
  out.push_back(static_cast<std::uint8_t>(t.ndim()));
  for (auto d : t.shape()) put_le<std::uint64_t>(out, d);
  out.reserve(out.size() + t.size() * dtype_size(dtype));

  for (double v : t.data()) {
    switch (dtype) {
      case Dtype::kFloat64:
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
        break;
      case Dtype::kFloat32: {
        const float f = static_cast<float>(v);  // round-to-nearest-even
        if (!std::isfinite(f)) fail(ErrorCode::kOverflow, "value does not fit in FP32");
        put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
        break;
      }
      case Dtype::kInt32: {
        if (v != std::trunc(v) || v < std::numeric_limits<std::int32_t>::min() ||
            v > std::numeric_limits<std::int32_t>::max())
          fail(ErrorCode::kInvalidArgument, "value is not representable as int32");
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(static_cast<std::int32_t>(v)));
        break;
      }
    }
  }
  return out;
}

Dtype peek_dtype(std::span<const std::uint8_t> bytes) { return parse_header(bytes).dtype; }

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  Header h = parse_header(bytes);
  const std::uint64_t n = checked_numel(h.shape);
  const std::size_t esize = dtype_size(h.dtype);
  if (n > std::numeric_limits<std::uint64_t>::max() / esize)
    fail(ErrorCode::kShapeOverflow, "payload size overflows 64 bits");
  const std::uint64_t payload = n * esize;
  const std::uint64_t available = bytes.size() - h.payload_offset;
  if (payload > available) fail(ErrorCode::kTruncated, "truncated DAQT payload");
  if (payload < available) fail(ErrorCode::kTrailingData, "unexpected bytes after DAQT payload");

  std::vector<double> data(n);
  const std::uint8_t* p = bytes.data() + h.payload_offset;
  for (std::uint64_t i = 0; i < n; ++i, p += esize) {
    switch (h.dtype) {
      case Dtype::kFloat64: data[i] = std::bit_cast<double>(get_le<std::uint64_t>(p)); break;
      case Dtype::kFloat32: data[i] = std::bit_cast<float>(get_le<std::uint32_t>(p)); break;
      case Dtype::kInt32: data[i] = static_cast<std::int32_t>(get_le<std::uint32_t>(p)); break;
    }
  }
  return Tensor(std::move(h.shape), std::move(data));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

Tensor read_tensor(const std::filesystem::path& path) { return decode_tensor(read_file_bytes(path)); }

void write_tensor(const Tensor& t, const std::filesystem::path& path, Dtype dtype) {
  const auto bytes = encode_tensor(t, dtype);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIo, "write failed: " + path.string());
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace daq
