// core/include/svkit/tensor.h

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

#ifndef SVKIT_TENSOR_H_
#define SVKIT_TENSOR_H_

#include <cstdint>
#include <string>
#include <vector>

namespace svkit {

// On-disk tensor ("TNSR", version 0x01):
//   magic "TNSR" | u8 version | u8 rank | rank x u32le dims | f32le data,
// row-major (last dim fastest).
struct TensorData {
  std::vector<uint32_t> dims;
  std::vector<float> data;

  size_t NumElements() const {
    size_t n = 1;
    for (uint32_t d : dims) n *= d;
    return dims.empty() ? 0 : n;
  }
};

TensorData LoadTensor(const std::string &path);
void SaveTensor(const TensorData &t, const std::string &path);

}  // namespace svkit

#endif  // SVKIT_TENSOR_H_
