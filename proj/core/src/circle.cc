// core/src/circle.cc

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

#include "svkit/circle.h"

#include <cmath>

#include "svkit/error.h"

namespace svkit {

CircleLossResult CircleLoss(const Vector &cosines, int target_index,
                            const CircleLossParams &params) {
  const Eigen::Index c = cosines.size();
  if (c < 2) throw DataError("circle loss needs at least 2 classes");
  if (target_index < 0 || target_index >= c)
    throw DataError("target index " + std::to_string(target_index) +
                    " out of range for " + std::to_string(c) + " classes");
  if (!(params.s > 0.0)) throw DataError("scale s must be positive");
  if (!(params.m > 0.0 && params.m < 1.0))
    throw DataError("margin m must lie in (0,1)");
  // Rounding slack: unit-vector dot products can land just outside [-1,1].
  for (Eigen::Index j = 0; j < c; j++)
    if (!(std::abs(cosines[j]) <= 1.0 + 1e-9))
      throw DataError("cosine " + std::to_string(cosines[j]) +
                      " outside [-1, 1]");

  const double s = params.s, m = params.m;
  Vector logits(c);
  for (Eigen::Index j = 0; j < c; j++) {
    double cj = cosines[j];
    logits[j] = (j == target_index) ? s * (m * m - (1.0 - cj) * (1.0 - cj))
                                    : s * (cj * cj - m * m);
  }

  double mx = logits.maxCoeff();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < c; j++) sum += std::exp(logits[j] - mx);
  double lse = mx + std::log(sum);

  CircleLossResult result;
  result.loss = lse - logits[target_index];
  result.grad.resize(c);
  for (Eigen::Index j = 0; j < c; j++) {
    double p = std::exp(logits[j] - lse);  // softmax, stable
    double cj = cosines[j];
    result.grad[j] = (j == target_index) ? (p - 1.0) * 2.0 * s * (1.0 - cj)
                                         : p * 2.0 * s * cj;
  }
  return result;
}

Vector CosinesAgainstClasses(const Vector &embedding,
                             const Matrix &class_weights) {
  if (class_weights.cols() != embedding.size())
    throw DataError("class weight dim does not match embedding dim");
  double en = embedding.norm();
  if (en == 0.0) throw DataError("cannot take cosines of a zero embedding");
  Vector out(class_weights.rows());
  for (Eigen::Index j = 0; j < class_weights.rows(); j++) {
    double wn = class_weights.row(j).norm();
    if (wn == 0.0)
      throw DataError("class weight row " + std::to_string(j) + " is zero");
    out[j] = class_weights.row(j).dot(embedding) / (wn * en);
  }
  return out;
}

}  // namespace svkit
