// core/include/svkit/repvgg.h

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

#ifndef SVKIT_REPVGG_H_
#define SVKIT_REPVGG_H_

#include <optional>
#include <vector>

namespace svkit {

// Dense 4-D array, row-major [d0][d1][d2][d3].  Conv tensors are
// [C2, C1, K, K]; activations are [N, C, H, W].
template <typename T>
struct Tensor4 {
  int d0 = 0, d1 = 0, d2 = 0, d3 = 0;
  std::vector<T> data;

  Tensor4() = default;
  Tensor4(int a, int b, int c, int d)
      : d0(a), d1(b), d2(c), d3(d),
        data(static_cast<size_t>(a) * b * c * d, T(0)) {}

  T &operator()(int i, int j, int y, int x) {
    return data[((static_cast<size_t>(i) * d1 + j) * d2 + y) * d3 + x];
  }
  const T &operator()(int i, int j, int y, int x) const {
    return data[((static_cast<size_t>(i) * d1 + j) * d2 + y) * d3 + x];
  }
};

// One training-time branch: conv (K in {1,3}, or the identity marker) then
// inference-mode batch normalization.
template <typename T>
struct ConvBranch {
  Tensor4<T> kernel;        // ignored when is_identity
  bool is_identity = false;
  std::vector<T> bn_mean;
  std::vector<T> bn_std;    // strictly positive
  std::vector<T> bn_scale;
  std::vector<T> bn_bias;
};

template <typename T>
struct RepVggBlock {
  ConvBranch<T> branch3;                 // 3x3, required
  std::optional<ConvBranch<T>> branch1;  // 1x1
  std::optional<ConvBranch<T>> branch0;  // identity; needs C1 == C2
};

template <typename T>
struct FusedConv {
  Tensor4<T> kernel;  // [C2, C1, 3, 3]
  std::vector<T> bias;
};

// Textbook cross-correlation, stride 1, zero padding (K-1)/2, so H and W are
// preserved.  K must be odd.
template <typename T>
Tensor4<T> Conv2dForward(const Tensor4<T> &input, const Tensor4<T> &kernel,
                         const std::vector<T> &bias);

// Per-channel affine (x - mean) scale / std + bias, inference mode.
template <typename T>
Tensor4<T> BatchnormForward(const Tensor4<T> &input,
                            const std::vector<T> &bn_mean,
                            const std::vector<T> &bn_std,
                            const std::vector<T> &bn_scale,
                            const std::vector<T> &bn_bias);

// Absorbs the branch's BN into its kernel, zero-padding 1x1 (and the
// materialized identity) to 3x3: kernel_j *= scale_j/std_j,
// bias_j = bn_bias_j - bn_mean_j scale_j/std_j.
template <typename T>
FusedConv<T> FoldBnIntoConv(const ConvBranch<T> &branch);

// Sum of the folded branches: one 3x3 conv equivalent to the block.
template <typename T>
FusedConv<T> FuseRepVggBlock(const RepVggBlock<T> &block);

// Multi-branch forward (sum of per-branch conv+BN outputs), the equivalence
// oracle for FuseRepVggBlock.
template <typename T>
Tensor4<T> BlockForward(const RepVggBlock<T> &block, const Tensor4<T> &input);

}  // namespace svkit

#endif  // SVKIT_REPVGG_H_
