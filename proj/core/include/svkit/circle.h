// core/include/svkit/circle.h

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

#ifndef SVKIT_CIRCLE_H_
#define SVKIT_CIRCLE_H_

#include "svkit/linalg.h"

namespace svkit {

struct CircleLossParams {
  double s = 60.0;  // scale, > 0
  double m = 0.35;  // margin, in (0,1)
};

struct CircleLossResult {
  double loss = 0.0;  // always >= 0
  Vector grad;        // d loss / d cosine, per class
};

// Margin softmax with quadratic similarity terms.  Class logits:
//   target     t_y = s (m^2 - (1 - cos_y)^2)
//   non-target t_j = s (cos_j^2 - m^2)
// and loss = logsumexp(logits) - t_y, evaluated log-sum-exp stabilized so
// s = 60 cannot overflow.  The analytic gradient uses the softmax p:
//   d loss / d cos_y = (p_y - 1) 2s (1 - cos_y)
//   d loss / d cos_j =  p_j      2s cos_j
// Cosines must lie in [-1, 1] (tiny rounding slack is allowed); C >= 2.
CircleLossResult CircleLoss(const Vector &cosines, int target_index,
                            const CircleLossParams &params);

// Thin helper: cosines of an embedding against rows of a class-weight
// matrix, both length-normalized.
Vector CosinesAgainstClasses(const Vector &embedding,
                             const Matrix &class_weights);

}  // namespace svkit

#endif  // SVKIT_CIRCLE_H_
