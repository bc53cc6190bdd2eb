// core/src/fusion.cc

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

#include "svkit/fusion.h"

#include <cmath>

#include "json_util.h"
#include "svkit/error.h"
#include "svkit/logistic.h"

namespace svkit {

namespace {

void CheckAligned(const std::vector<TrialScores> &systems) {
  if (systems.empty()) throw DataError("fusion needs at least one system");
  const TrialScores &first = systems[0];
  for (size_t j = 1; j < systems.size(); j++) {
    if (systems[j].records.size() != first.records.size())
      throw DataError("system " + std::to_string(j + 1) + " has " +
                      std::to_string(systems[j].records.size()) +
                      " trials, system 1 has " +
                      std::to_string(first.records.size()));
    for (size_t i = 0; i < first.records.size(); i++) {
      const TrialRecord &a = first.records[i];
      const TrialRecord &b = systems[j].records[i];
      if (a.enroll_id != b.enroll_id || a.test_id != b.test_id)
        throw DataError("trial " + std::to_string(i + 1) + " diverges: (" +
                        a.enroll_id + ", " + a.test_id + ") in system 1 vs (" +
                        b.enroll_id + ", " + b.test_id + ") in system " +
                        std::to_string(j + 1));
    }
  }
}

}  // namespace

FusionModel TrainFusion(const std::vector<TrialScores> &systems, double prior,
                        double l2) {
  CheckAligned(systems);
  const size_t n = systems[0].records.size();
  const size_t j_count = systems.size();
  if (n == 0) throw DataError("no trials to fuse");

  Matrix features(static_cast<Eigen::Index>(n),
                  static_cast<Eigen::Index>(j_count) + 1);
  std::vector<uint8_t> is_target(n);
  for (size_t i = 0; i < n; i++) {
    const TrialRecord &r = systems[0].records[i];
    if (r.key == TrialKey::kUnknown)
      throw DataError("fusion training needs keyed trials");
    is_target[i] = (r.key == TrialKey::kTarget) ? 1 : 0;
    for (size_t j = 0; j < j_count; j++) {
      double s = systems[j].records[i].score;
      if (!std::isfinite(s))
        throw DataError("non-finite score in system " + std::to_string(j + 1) +
                        " at trial " + std::to_string(i + 1));
      features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
    features(static_cast<Eigen::Index>(i),
             static_cast<Eigen::Index>(j_count)) = 1.0;
  }

  Vector anchor(j_count + 1);
  anchor.head(static_cast<Eigen::Index>(j_count))
      .setConstant(1.0 / static_cast<double>(j_count));
  anchor[static_cast<Eigen::Index>(j_count)] = 0.0;
  Vector theta =
      FitPriorWeightedLogistic(features, is_target, prior, l2, anchor);

  FusionModel model;
  model.effective_prior = prior;
  for (size_t j = 0; j < j_count; j++)
    model.weights.push_back(theta[static_cast<Eigen::Index>(j)]);
  model.offset = theta[static_cast<Eigen::Index>(j_count)];
  return model;
}

TrialScores ApplyFusion(const FusionModel &model,
                        const std::vector<TrialScores> &systems) {
  CheckAligned(systems);
  if (systems.size() != model.weights.size())
    throw DataError("model fuses " + std::to_string(model.weights.size()) +
                    " systems, got " + std::to_string(systems.size()));
  TrialScores out = systems[0];
  for (size_t i = 0; i < out.records.size(); i++) {
    double l = model.offset;
    for (size_t j = 0; j < systems.size(); j++)
      l += model.weights[j] * systems[j].records[i].score;
    out.records[i].score = l;
  }
  return out;
}

void SaveFusion(const FusionModel &model, const std::string &path) {
  internal::Json j;
  j["version"] = 1;
  j["effective_prior"] = model.effective_prior;
  j["weights"] = model.weights;
  j["offset"] = model.offset;
  internal::SaveJsonFile(j, path);
}

FusionModel LoadFusion(const std::string &path) {
  internal::Json j = internal::LoadJsonFile(path);
  FusionModel model;
  model.effective_prior =
      internal::Require(j, "effective_prior", path).get<double>();
  model.weights =
      internal::Require(j, "weights", path).get<std::vector<double>>();
  model.offset = internal::Require(j, "offset", path).get<double>();
  if (model.weights.empty()) throw DataError("empty fusion weights in " + path);
  return model;
}

}  // namespace svkit
