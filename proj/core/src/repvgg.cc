// core/src/repvgg.cc

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

#include "svkit/repvgg.h"

#include <string>

#include "svkit/error.h"

namespace svkit {

namespace {

template <typename T>
void CheckBnVectors(const ConvBranch<T> &branch, int c2) {
  if (static_cast<int>(branch.bn_mean.size()) != c2 ||
      static_cast<int>(branch.bn_std.size()) != c2 ||
      static_cast<int>(branch.bn_scale.size()) != c2 ||
      static_cast<int>(branch.bn_bias.size()) != c2)
    throw DataError("BN vector lengths do not match " + std::to_string(c2) +
                    " output channels");
  for (const T &s : branch.bn_std)
    if (!(s > T(0))) throw DataError("BN std must be strictly positive");
}

// The identity branch as an explicit kernel: a center tap of 1 wired from
// each channel to itself.
template <typename T>
Tensor4<T> MaterializeIdentity(int channels, int k) {
  Tensor4<T> kernel(channels, channels, k, k);
  int center = (k - 1) / 2;
  for (int j = 0; j < channels; j++) kernel(j, j, center, center) = T(1);
  return kernel;
}

struct BranchShape {
  int c2, c1, k;
};

template <typename T>
BranchShape CheckBranch(const ConvBranch<T> &branch) {
  if (branch.is_identity) {
    int c2 = static_cast<int>(branch.bn_mean.size());
    CheckBnVectors(branch, c2);
    return {c2, c2, 1};
  }
  const Tensor4<T> &kk = branch.kernel;
  if (kk.d2 != kk.d3 || (kk.d2 != 1 && kk.d2 != 3))
    throw DataError("conv kernel must be 1x1 or 3x3");
  if (kk.d0 <= 0 || kk.d1 <= 0) throw DataError("conv kernel has no channels");
  CheckBnVectors(branch, kk.d0);
  return {kk.d0, kk.d1, kk.d2};
}

}  // namespace

template <typename T>
Tensor4<T> Conv2dForward(const Tensor4<T> &input, const Tensor4<T> &kernel,
                         const std::vector<T> &bias) {
  if (kernel.d2 != kernel.d3 || kernel.d2 % 2 == 0)
    throw DataError("conv kernel must be square with odd size");
  if (input.d1 != kernel.d1)
    throw DataError("input has " + std::to_string(input.d1) +
                    " channels, kernel expects " + std::to_string(kernel.d1));
  if (static_cast<int>(bias.size()) != kernel.d0)
    throw DataError("bias length does not match output channels");
  const int n = input.d0, c1 = input.d1, h = input.d2, w = input.d3;
  const int c2 = kernel.d0, k = kernel.d2, pad = (k - 1) / 2;

  Tensor4<T> out(n, c2, h, w);
  for (int b = 0; b < n; b++)
    for (int j = 0; j < c2; j++)
      for (int y = 0; y < h; y++)
        for (int x = 0; x < w; x++) {
          T acc = bias[j];
          for (int i = 0; i < c1; i++)
            for (int dy = 0; dy < k; dy++) {
              int sy = y + dy - pad;
              if (sy < 0 || sy >= h) continue;
              for (int dx = 0; dx < k; dx++) {
                int sx = x + dx - pad;
                if (sx < 0 || sx >= w) continue;
                acc += input(b, i, sy, sx) * kernel(j, i, dy, dx);
              }
            }
          out(b, j, y, x) = acc;
        }
  return out;
}

template <typename T>
Tensor4<T> BatchnormForward(const Tensor4<T> &input,
                            const std::vector<T> &bn_mean,
                            const std::vector<T> &bn_std,
                            const std::vector<T> &bn_scale,
                            const std::vector<T> &bn_bias) {
  const int c = input.d1;
  if (static_cast<int>(bn_mean.size()) != c ||
      static_cast<int>(bn_std.size()) != c ||
      static_cast<int>(bn_scale.size()) != c ||
      static_cast<int>(bn_bias.size()) != c)
    throw DataError("BN vector lengths do not match channel count");
  Tensor4<T> out = input;
  for (int b = 0; b < input.d0; b++)
    for (int j = 0; j < c; j++) {
      if (!(bn_std[j] > T(0)))
        throw DataError("BN std must be strictly positive");
      T a = bn_scale[j] / bn_std[j];
      for (int y = 0; y < input.d2; y++)
        for (int x = 0; x < input.d3; x++)
          out(b, j, y, x) = (input(b, j, y, x) - bn_mean[j]) * a + bn_bias[j];
    }
  return out;
}

template <typename T>
FusedConv<T> FoldBnIntoConv(const ConvBranch<T> &branch) {
  BranchShape shape = CheckBranch(branch);
  Tensor4<T> kernel = branch.is_identity
                          ? MaterializeIdentity<T>(shape.c2, 3)
                          : Tensor4<T>(shape.c2, shape.c1, 3, 3);
  if (!branch.is_identity) {
    // Copy at the center so a 1x1 kernel lands zero-padded in a 3x3 frame.
    int off = (3 - shape.k) / 2;
    for (int j = 0; j < shape.c2; j++)
      for (int i = 0; i < shape.c1; i++)
        for (int y = 0; y < shape.k; y++)
          for (int x = 0; x < shape.k; x++)
            kernel(j, i, y + off, x + off) = branch.kernel(j, i, y, x);
  }
  FusedConv<T> fused;
  fused.kernel = std::move(kernel);
  fused.bias.resize(shape.c2);
  for (int j = 0; j < shape.c2; j++) {
    T a = branch.bn_scale[j] / branch.bn_std[j];
    for (int i = 0; i < shape.c1; i++)
      for (int y = 0; y < 3; y++)
        for (int x = 0; x < 3; x++) fused.kernel(j, i, y, x) *= a;
    fused.bias[j] = branch.bn_bias[j] - branch.bn_mean[j] * a;
  }
  return fused;
}

template <typename T>
FusedConv<T> FuseRepVggBlock(const RepVggBlock<T> &block) {
  BranchShape shape = CheckBranch(block.branch3);
  if (shape.k != 3) throw DataError("branch3 must carry a 3x3 kernel");
  FusedConv<T> fused = FoldBnIntoConv(block.branch3);

  auto add = [&](const ConvBranch<T> &branch, bool identity_required) {
    BranchShape bs = CheckBranch(branch);
    if (bs.c1 != shape.c1 || bs.c2 != shape.c2)
      throw DataError("branches disagree on channel counts");
    if (identity_required && shape.c1 != shape.c2)
      throw DataError("identity branch needs matching channel counts");
    FusedConv<T> part = FoldBnIntoConv(branch);
    for (size_t i = 0; i < fused.kernel.data.size(); i++)
      fused.kernel.data[i] += part.kernel.data[i];
    for (int j = 0; j < shape.c2; j++) fused.bias[j] += part.bias[j];
  };
  if (block.branch1) {
    if (block.branch1->is_identity || block.branch1->kernel.d2 != 1)
      throw DataError("branch1 must carry a 1x1 kernel");
    add(*block.branch1, false);
  }
  if (block.branch0) {
    if (!block.branch0->is_identity)
      throw DataError("branch0 must be the identity branch");
    add(*block.branch0, true);
  }
  return fused;
}

template <typename T>
Tensor4<T> BlockForward(const RepVggBlock<T> &block, const Tensor4<T> &input) {
  auto branch_forward = [&](const ConvBranch<T> &branch) {
    Tensor4<T> pre;
    if (branch.is_identity) {
      pre = input;
    } else {
      std::vector<T> zero_bias(branch.kernel.d0, T(0));
      pre = Conv2dForward(input, branch.kernel, zero_bias);
    }
    return BatchnormForward(pre, branch.bn_mean, branch.bn_std,
                            branch.bn_scale, branch.bn_bias);
  };

  Tensor4<T> out = branch_forward(block.branch3);
  auto accumulate = [&](const ConvBranch<T> &branch) {
    Tensor4<T> part = branch_forward(branch);
    if (part.data.size() != out.data.size())
      throw DataError("branch outputs disagree in shape");
    for (size_t i = 0; i < out.data.size(); i++) out.data[i] += part.data[i];
  };
  if (block.branch1) accumulate(*block.branch1);
  if (block.branch0) accumulate(*block.branch0);
  return out;
}

template Tensor4<float> Conv2dForward(const Tensor4<float> &,
                                      const Tensor4<float> &,
                                      const std::vector<float> &);
template Tensor4<double> Conv2dForward(const Tensor4<double> &,
                                       const Tensor4<double> &,
                                       const std::vector<double> &);
template Tensor4<float> BatchnormForward(const Tensor4<float> &,
                                         const std::vector<float> &,
                                         const std::vector<float> &,
                                         const std::vector<float> &,
                                         const std::vector<float> &);
template Tensor4<double> BatchnormForward(const Tensor4<double> &,
                                          const std::vector<double> &,
                                          const std::vector<double> &,
                                          const std::vector<double> &,
                                          const std::vector<double> &);
template FusedConv<float> FoldBnIntoConv(const ConvBranch<float> &);
template FusedConv<double> FoldBnIntoConv(const ConvBranch<double> &);
template FusedConv<float> FuseRepVggBlock(const RepVggBlock<float> &);
template FusedConv<double> FuseRepVggBlock(const RepVggBlock<double> &);
template Tensor4<float> BlockForward(const RepVggBlock<float> &,
                                     const Tensor4<float> &);
template Tensor4<double> BlockForward(const RepVggBlock<double> &,
                                      const Tensor4<double> &);

}  // namespace svkit
