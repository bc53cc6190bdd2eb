// core/src/tensor.cc

// Copyright 2026  svkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "svkit/tensor.h"

#include <cstring>
#include <fstream>
#include <limits>

#include "svkit/error.h"

namespace svkit {

namespace {
constexpr char kMagic[4] = {'T', 'N', 'S', 'R'};
constexpr uint8_t kVersion = 0x01;
constexpr uint8_t kMaxRank = 8;
}  // namespace

TensorData LoadTensor(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open tensor file: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("malformed header (bad magic) in " + path);
  uint8_t version = 0, rank = 0;
  is.read(reinterpret_cast<char *>(&version), 1);
  is.read(reinterpret_cast<char *>(&rank), 1);
  if (!is || version != kVersion)
    throw DataError("unsupported tensor version in " + path);
  if (rank == 0 || rank > kMaxRank)
    throw DataError("tensor rank " + std::to_string(rank) +
                    " out of range in " + path);
  TensorData t;
  t.dims.resize(rank);
  is.read(reinterpret_cast<char *>(t.dims.data()), rank * 4);
  if (!is) throw DataError("unexpected end of file in " + path);
  size_t count = 1;
  for (uint32_t d : t.dims) {
    if (d == 0) throw DataError("zero dimension in " + path);
    if (count > std::numeric_limits<size_t>::max() / d)
      throw DataError("tensor size overflow in " + path);
    count *= d;
  }
  t.data.resize(count);
  is.read(reinterpret_cast<char *>(t.data.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (!is) throw DataError("unexpected end of file in " + path);
  return t;
}

void SaveTensor(const TensorData &t, const std::string &path) {
  if (t.dims.empty() || t.dims.size() > kMaxRank)
    throw DataError("tensor rank out of range");
  if (t.NumElements() != t.data.size())
    throw DataError("tensor data size does not match its dims");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os.write(kMagic, 4);
  os.write(reinterpret_cast<const char *>(&kVersion), 1);
  uint8_t rank = static_cast<uint8_t>(t.dims.size());
  os.write(reinterpret_cast<const char *>(&rank), 1);
  os.write(reinterpret_cast<const char *>(t.dims.data()),
           static_cast<std::streamsize>(t.dims.size() * 4));
  os.write(reinterpret_cast<const char *>(t.data.data()),
           static_cast<std::streamsize>(t.data.size() * sizeof(float)));
  if (!os) throw DataError("I/O failure writing " + path);
}

}  // namespace svkit
