// core/include/svkit/metrics.h

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

#ifndef SVKIT_METRICS_H_
#define SVKIT_METRICS_H_

#include <map>
#include <string>
#include <vector>

#include "svkit/trials.h"

namespace svkit {

// Detection-cost parameters.  Defaults follow the common CTS two-prior
// average; they are configuration, not ground truth.
struct CostParams {
  std::vector<double> target_priors = {0.01, 0.005};
  double c_miss = 1.0;
  double c_fa = 1.0;

  void Validate() const;  // DataError on empty/out-of-range entries
};

struct CostResult {
  double mean = 0.0;               // average over priors
  std::vector<double> per_prior;   // aligned with CostParams.target_priors
};

struct DetPoint {
  double threshold;
  double p_miss;
  double p_fa;
};

struct DetCurve {
  std::vector<DetPoint> points;  // thresholds ascending, -inf..+inf
};

// All functions require every record keyed target or nontarget and at least
// one of each; the decision rule is accept iff score >= threshold, so
// p_miss(t) counts targets < t and p_fa(t) counts nontargets >= t.
//
// Thresholds considered are the decision boundaries: midpoints between
// adjacent distinct scores plus -inf and +inf.  This grid reaches every
// empirical operating point, so the minimum cost is the true minimum.

// Rate at the p_miss = p_fa crossing, linearly interpolated between the two
// neighboring boundary points.
double ComputeEer(const TrialScores &scores);

// Normalized detection cost
//   [c_miss pi p_miss + c_fa (1-pi) p_fa] / min(c_miss pi, c_fa (1-pi))
// minimized over the boundary grid, per prior and averaged.
CostResult ComputeMinCost(const TrialScores &scores, const CostParams &params);

// Same cost at the fixed Bayes threshold log(c_fa(1-pi)/(c_miss pi)) per
// prior; meaningful when scores are calibrated LLRs.  Never below the
// corresponding minimum cost.
CostResult ComputeActCost(const TrialScores &scores, const CostParams &params);

DetCurve ComputeDetCurve(const TrialScores &scores);

// Groups keyed records by partition for per-condition reporting; records
// without a partition map to the empty key.
std::map<std::string, TrialScores> SplitByPartition(const TrialScores &scores);

}  // namespace svkit

#endif  // SVKIT_METRICS_H_
