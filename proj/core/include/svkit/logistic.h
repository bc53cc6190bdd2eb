// core/include/svkit/logistic.h

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

#ifndef SVKIT_LOGISTIC_H_
#define SVKIT_LOGISTIC_H_

#include <cstdint>
#include <vector>

#include "svkit/linalg.h"

namespace svkit {

// Prior-weighted binary cross-entropy over rows x_i of `features` with
// linear score l_i = x_i . theta:
//
//   J(theta) = (pi/N_t)    sum_targets    softplus(-(l_i + logit pi))
//            + ((1-pi)/N_n) sum_nontargets softplus( l_i + logit pi)
//            + l2 |theta - anchor|^2
//
// The prior offset logit(pi) enters only the objective, so the optimum maps
// scores to log-likelihood ratios.  J is convex; the l2 term pulls toward
// the do-nothing anchor.
double PriorWeightedLogisticLoss(const Matrix &features,
                                 const std::vector<uint8_t> &is_target,
                                 double prior, double l2, const Vector &anchor,
                                 const Vector &theta);

Vector PriorWeightedLogisticGrad(const Matrix &features,
                                 const std::vector<uint8_t> &is_target,
                                 double prior, double l2, const Vector &anchor,
                                 const Vector &theta);

// Newton descent with backtracking; stops at gradient 2-norm <= 1e-8, iter
// cap 10000 (NumericalError beyond).  Starts from `init` when given, else
// from the anchor.  Deterministic.
Vector FitPriorWeightedLogistic(const Matrix &features,
                                const std::vector<uint8_t> &is_target,
                                double prior, double l2, const Vector &anchor,
                                const Vector *init = nullptr);

}  // namespace svkit

#endif  // SVKIT_LOGISTIC_H_
