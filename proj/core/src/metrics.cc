// core/src/metrics.cc

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

#include "svkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svkit/error.h"

namespace svkit {

void CostParams::Validate() const {
  if (target_priors.empty()) throw DataError("target_priors is empty");
  for (double p : target_priors)
    if (!(p > 0.0 && p < 1.0))
      throw DataError("target prior must lie strictly inside (0,1)");
  if (!(c_miss > 0.0) || !(c_fa > 0.0))
    throw DataError("c_miss and c_fa must be positive");
}

namespace {

struct ClassScores {
  std::vector<double> targets;     // sorted ascending
  std::vector<double> nontargets;  // sorted ascending
};

ClassScores SplitClasses(const TrialScores &scores) {
  ClassScores cs;
  for (size_t i = 0; i < scores.records.size(); i++) {
    const TrialRecord &r = scores.records[i];
    if (!std::isfinite(r.score))
      throw DataError("non-finite score at trial " + std::to_string(i + 1));
    switch (r.key) {
      case TrialKey::kTarget:
        cs.targets.push_back(r.score);
        break;
      case TrialKey::kNontarget:
        cs.nontargets.push_back(r.score);
        break;
      case TrialKey::kUnknown:
        throw DataError("unkeyed trial at record " + std::to_string(i + 1) +
                        "; metrics need target/nontarget labels");
    }
  }
  if (cs.targets.empty() || cs.nontargets.empty())
    throw DataError("metrics need at least one target and one nontarget trial");
  std::sort(cs.targets.begin(), cs.targets.end());
  std::sort(cs.nontargets.begin(), cs.nontargets.end());
  return cs;
}

// Midpoints between adjacent distinct scores, plus -inf and +inf, ascending.
std::vector<double> BoundaryThresholds(const ClassScores &cs) {
  std::vector<double> all;
  all.reserve(cs.targets.size() + cs.nontargets.size());
  all.insert(all.end(), cs.targets.begin(), cs.targets.end());
  all.insert(all.end(), cs.nontargets.begin(), cs.nontargets.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<double> thresholds;
  thresholds.reserve(all.size() + 1);
  thresholds.push_back(-std::numeric_limits<double>::infinity());
  for (size_t i = 0; i + 1 < all.size(); i++)
    thresholds.push_back(0.5 * (all[i] + all[i + 1]));
  thresholds.push_back(std::numeric_limits<double>::infinity());
  return thresholds;
}

// Exact integer counts at a threshold under the accept-iff(s >= t) rule.
struct ErrorRates {
  double p_miss;
  double p_fa;
};

ErrorRates RatesAt(const ClassScores &cs, double threshold) {
  auto misses = std::lower_bound(cs.targets.begin(), cs.targets.end(),
                                 threshold) -
                cs.targets.begin();
  auto accepts = cs.nontargets.end() -
                 std::lower_bound(cs.nontargets.begin(), cs.nontargets.end(),
                                  threshold);
  return {static_cast<double>(misses) / cs.targets.size(),
          static_cast<double>(accepts) / cs.nontargets.size()};
}

double NormalizedCost(const ErrorRates &r, double prior, double c_miss,
                      double c_fa) {
  return (c_miss * prior * r.p_miss + c_fa * (1.0 - prior) * r.p_fa) /
         std::min(c_miss * prior, c_fa * (1.0 - prior));
}

}  // namespace

double ComputeEer(const TrialScores &scores) {
  ClassScores cs = SplitClasses(scores);
  std::vector<double> thresholds = BoundaryThresholds(cs);

  // p_miss - p_fa starts at -1 (accept everything) and ends at +1 (reject
  // everything); find the first nonnegative point and interpolate with its
  // predecessor.
  ErrorRates prev = RatesAt(cs, thresholds[0]);
  for (size_t i = 1; i < thresholds.size(); i++) {
    ErrorRates cur = RatesAt(cs, thresholds[i]);
    if (cur.p_miss - cur.p_fa >= 0.0) {
      double d1 = prev.p_miss - prev.p_fa;
      double d2 = cur.p_miss - cur.p_fa;
      double t = -d1 / (d2 - d1);  // d1 < 0 <= d2, so d2 - d1 > 0
      return prev.p_miss + t * (cur.p_miss - prev.p_miss);
    }
    prev = cur;
  }
  throw NumericalError("EER crossing not found");  // unreachable by the above
}

CostResult ComputeMinCost(const TrialScores &scores, const CostParams &params) {
  params.Validate();
  ClassScores cs = SplitClasses(scores);
  std::vector<double> thresholds = BoundaryThresholds(cs);
  std::vector<ErrorRates> rates;
  rates.reserve(thresholds.size());
  for (double t : thresholds) rates.push_back(RatesAt(cs, t));

  CostResult result;
  result.per_prior.reserve(params.target_priors.size());
  for (double prior : params.target_priors) {
    double best = std::numeric_limits<double>::infinity();
    for (const ErrorRates &r : rates)
      best = std::min(best, NormalizedCost(r, prior, params.c_miss,
                                           params.c_fa));
    result.per_prior.push_back(best);
    result.mean += best;
  }
  result.mean /= params.target_priors.size();
  return result;
}

CostResult ComputeActCost(const TrialScores &scores, const CostParams &params) {
  params.Validate();
  ClassScores cs = SplitClasses(scores);
  CostResult result;
  result.per_prior.reserve(params.target_priors.size());
  for (double prior : params.target_priors) {
    double bayes = std::log(params.c_fa * (1.0 - prior) /
                            (params.c_miss * prior));
    double cost =
        NormalizedCost(RatesAt(cs, bayes), prior, params.c_miss, params.c_fa);
    result.per_prior.push_back(cost);
    result.mean += cost;
  }
  result.mean /= params.target_priors.size();
  return result;
}

DetCurve ComputeDetCurve(const TrialScores &scores) {
  ClassScores cs = SplitClasses(scores);
  DetCurve curve;
  for (double t : BoundaryThresholds(cs)) {
    ErrorRates r = RatesAt(cs, t);
    curve.points.push_back({t, r.p_miss, r.p_fa});
  }
  return curve;
}

std::map<std::string, TrialScores> SplitByPartition(const TrialScores &scores) {
  std::map<std::string, TrialScores> parts;
  for (const TrialRecord &r : scores.records)
    parts[r.partition.value_or("")].records.push_back(r);
  return parts;
}

}  // namespace svkit
