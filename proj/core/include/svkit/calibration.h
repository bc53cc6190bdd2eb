// core/include/svkit/calibration.h

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

#ifndef SVKIT_CALIBRATION_H_
#define SVKIT_CALIBRATION_H_

#include <map>
#include <string>
#include <vector>

#include "svkit/embedding.h"
#include "svkit/trials.h"

namespace svkit {

// Affine-plus-quality transform for one condition: s -> a s + b + w . q.
struct CalibrationParams {
  double scale = 1.0;
  double offset = 0.0;
  std::vector<double> qm_weights;  // empty when trained without QM
};

// Which side features enter the QM vector.  The full default is
// [log dur_enroll, log dur_test, |enroll|, |test|], computed on
// pre-length-norm embeddings.
struct QmConfig {
  bool log_duration = true;
  bool embedding_norm = true;
};

struct CalibrationModel {
  CalibrationParams global;
  std::map<std::string, CalibrationParams> partitions;
  double effective_prior = 0.01;
  bool use_qm = false;
  int qm_dim = 0;
  // Which features the qm_weights refer to; meaningful only with use_qm.
  QmConfig qm_features;
};

std::vector<double> ExtractQm(const Embedding &enroll, const Embedding &test,
                              const QmConfig &cfg);

// Fills record.qm for every trial by id lookup; DataError on unknown ids or
// missing durations when requested.
void AttachQm(TrialScores &trials, const EmbeddingSet &enroll,
              const EmbeddingSet &test, const QmConfig &cfg);

// Fits the prior-weighted logistic transform (see svkit/logistic.h) with
// features [score, 1, qm...] and anchor (a,b,w) = (1,0,0).  The global model
// is always trained; with per_partition, each partition with both classes
// present gets its own parameters and degenerate partitions fall back to the
// global model with a warning.  use_qm requires qm on every record.
CalibrationModel TrainCalibration(const TrialScores &scores,
                                  bool per_partition, bool use_qm,
                                  double prior, double l2);

// Applies per-trial parameters by partition, global when the partition is
// missing or was never trained.  The decision-prior offset is not added;
// outputs are LLRs.  fallback_count, when given, receives the number of
// trials that used the global fallback.
TrialScores ApplyCalibration(const CalibrationModel &model,
                             const TrialScores &scores,
                             size_t *fallback_count = nullptr);

void SaveCalibration(const CalibrationModel &model, const std::string &path);
CalibrationModel LoadCalibration(const std::string &path);

}  // namespace svkit

#endif  // SVKIT_CALIBRATION_H_
