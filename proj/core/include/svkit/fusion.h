// core/include/svkit/fusion.h

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

#ifndef SVKIT_FUSION_H_
#define SVKIT_FUSION_H_

#include <string>
#include <vector>

#include "svkit/trials.h"

namespace svkit {

// Linear score combination across systems: l = b + sum_j a_j s_j.
struct FusionModel {
  std::vector<double> weights;
  double offset = 0.0;
  double effective_prior = 0.01;
};

// Fits the same prior-weighted logistic objective as calibration over
// features [s_1..s_J, 1], anchored at uniform weights 1/J and zero offset,
// so a single-system fusion reduces to plain calibration.  All systems must
// cover the identical trial list (same id pairs in the same order); keys are
// taken from the first system.
FusionModel TrainFusion(const std::vector<TrialScores> &systems, double prior,
                        double l2);

// Applies the combination; ids, keys, and partitions come from the first
// system.  DataError when the system count does not match the model.
TrialScores ApplyFusion(const FusionModel &model,
                        const std::vector<TrialScores> &systems);

void SaveFusion(const FusionModel &model, const std::string &path);
FusionModel LoadFusion(const std::string &path);

}  // namespace svkit

#endif  // SVKIT_FUSION_H_
