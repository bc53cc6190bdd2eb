// core/src/calibration.cc

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

#include "svkit/calibration.h"

#include <cmath>
#include <unordered_map>

#include "json_util.h"
#include "svkit/error.h"
#include "svkit/logistic.h"

namespace svkit {

namespace {

// Rows: [score, 1, qm...].  Labels from the trial keys.
struct Problem {
  Matrix features;
  std::vector<uint8_t> is_target;
};

Problem BuildProblem(const std::vector<const TrialRecord *> &records,
                     bool use_qm, int qm_dim) {
  Problem p;
  p.features.resize(static_cast<Eigen::Index>(records.size()),
                    2 + (use_qm ? qm_dim : 0));
  p.is_target.resize(records.size());
  for (size_t i = 0; i < records.size(); i++) {
    const TrialRecord &r = *records[i];
    if (r.key == TrialKey::kUnknown)
      throw DataError("calibration training needs keyed trials");
    if (!std::isfinite(r.score))
      throw DataError("non-finite score for trial (" + r.enroll_id + ", " +
                      r.test_id + ")");
    Eigen::Index row = static_cast<Eigen::Index>(i);
    p.features(row, 0) = r.score;
    p.features(row, 1) = 1.0;
    if (use_qm) {
      if (!r.qm || static_cast<int>(r.qm->size()) != qm_dim)
        throw DataError("trial (" + r.enroll_id + ", " + r.test_id +
                        ") lacks the " + std::to_string(qm_dim) +
                        "-dim QM vector required for QM calibration");
      for (int k = 0; k < qm_dim; k++) p.features(row, 2 + k) = (*r.qm)[k];
    }
    p.is_target[i] = (r.key == TrialKey::kTarget) ? 1 : 0;
  }
  return p;
}

CalibrationParams FitParams(const std::vector<const TrialRecord *> &records,
                            bool use_qm, int qm_dim, double prior, double l2) {
  Problem p = BuildProblem(records, use_qm, qm_dim);
  Vector anchor = Vector::Zero(p.features.cols());
  anchor[0] = 1.0;
  Vector theta = FitPriorWeightedLogistic(p.features, p.is_target, prior, l2,
                                          anchor);
  CalibrationParams out;
  out.scale = theta[0];
  out.offset = theta[1];
  for (Eigen::Index k = 2; k < theta.size(); k++)
    out.qm_weights.push_back(theta[k]);
  if (out.scale <= 0.0)
    SVKIT_WARN << "calibration scale " << out.scale
               << " is not positive; the input scores oppose the key";
  return out;
}

double ApplyParams(const CalibrationParams &p, const TrialRecord &r,
                   bool use_qm, int qm_dim) {
  double l = p.scale * r.score + p.offset;
  if (use_qm) {
    if (!r.qm || static_cast<int>(r.qm->size()) != qm_dim)
      throw DataError("trial (" + r.enroll_id + ", " + r.test_id +
                      ") lacks the QM vector the model was trained with");
    for (int k = 0; k < qm_dim; k++) l += p.qm_weights[k] * (*r.qm)[k];
  }
  return l;
}

int InferQmDim(const TrialScores &scores) {
  for (const TrialRecord &r : scores.records)
    if (r.qm) return static_cast<int>(r.qm->size());
  throw DataError("QM calibration requested but no trial carries a QM vector");
}

internal::Json ParamsToJson(const CalibrationParams &p) {
  internal::Json j;
  j["scale"] = p.scale;
  j["offset"] = p.offset;
  j["qm_weights"] = p.qm_weights;
  return j;
}

CalibrationParams ParamsFromJson(const internal::Json &j,
                                 const std::string &path) {
  CalibrationParams p;
  p.scale = internal::Require(j, "scale", path).get<double>();
  p.offset = internal::Require(j, "offset", path).get<double>();
  p.qm_weights = internal::Require(j, "qm_weights", path)
                     .get<std::vector<double>>();
  return p;
}

}  // namespace

std::vector<double> ExtractQm(const Embedding &enroll, const Embedding &test,
                              const QmConfig &cfg) {
  if (!cfg.log_duration && !cfg.embedding_norm)
    throw DataError("QM extraction needs at least one feature enabled");
  std::vector<double> qm;
  if (cfg.log_duration) {
    for (const Embedding *e : {&enroll, &test}) {
      if (!e->duration_s)
        throw DataError("embedding '" + e->id +
                        "' lacks the duration needed for duration QM");
      if (*e->duration_s <= 0.0f)
        throw DataError("embedding '" + e->id + "' has non-positive duration");
      qm.push_back(std::log(static_cast<double>(*e->duration_s)));
    }
  }
  if (cfg.embedding_norm) {
    qm.push_back(enroll.vector.norm());
    qm.push_back(test.vector.norm());
  }
  return qm;
}

void AttachQm(TrialScores &trials, const EmbeddingSet &enroll,
              const EmbeddingSet &test, const QmConfig &cfg) {
  std::unordered_map<std::string, const Embedding *> e_index, t_index;
  for (const Embedding &e : enroll.items) e_index.emplace(e.id, &e);
  for (const Embedding &e : test.items) t_index.emplace(e.id, &e);
  for (TrialRecord &r : trials.records) {
    auto ite = e_index.find(r.enroll_id);
    if (ite == e_index.end())
      throw DataError("unknown enroll id '" + r.enroll_id + "' in QM pass");
    auto itt = t_index.find(r.test_id);
    if (itt == t_index.end())
      throw DataError("unknown test id '" + r.test_id + "' in QM pass");
    r.qm = ExtractQm(*ite->second, *itt->second, cfg);
  }
}

CalibrationModel TrainCalibration(const TrialScores &scores,
                                  bool per_partition, bool use_qm,
                                  double prior, double l2) {
  if (scores.records.empty()) throw DataError("no trials to calibrate on");
  CalibrationModel model;
  model.effective_prior = prior;
  model.use_qm = use_qm;
  model.qm_dim = use_qm ? InferQmDim(scores) : 0;

  std::vector<const TrialRecord *> all;
  all.reserve(scores.records.size());
  for (const TrialRecord &r : scores.records) all.push_back(&r);
  model.global = FitParams(all, use_qm, model.qm_dim, prior, l2);

  if (per_partition) {
    std::map<std::string, std::vector<const TrialRecord *>> parts;
    for (const TrialRecord &r : scores.records)
      if (r.partition) parts[*r.partition].push_back(&r);
    for (const auto &[name, records] : parts) {
      size_t n_t = 0;
      for (const TrialRecord *r : records)
        n_t += (r->key == TrialKey::kTarget);
      if (n_t == 0 || n_t == records.size()) {
        SVKIT_WARN << "partition '" << name
                   << "' lacks a class; falling back to the global model";
        continue;
      }
      model.partitions[name] =
          FitParams(records, use_qm, model.qm_dim, prior, l2);
    }
  }
  return model;
}

TrialScores ApplyCalibration(const CalibrationModel &model,
                             const TrialScores &scores,
                             size_t *fallback_count) {
  TrialScores out = scores;
  size_t fallbacks = 0;
  for (TrialRecord &r : out.records) {
    const CalibrationParams *params = &model.global;
    if (!model.partitions.empty()) {
      if (r.partition) {
        auto it = model.partitions.find(*r.partition);
        if (it != model.partitions.end()) {
          params = &it->second;
        } else {
          fallbacks++;
        }
      } else {
        fallbacks++;
      }
    }
    r.score = ApplyParams(*params, r, model.use_qm, model.qm_dim);
  }
  if (fallbacks > 0)
    SVKIT_WARN << fallbacks
               << " trial(s) used the global calibration fallback";
  if (fallback_count) *fallback_count = fallbacks;
  return out;
}

void SaveCalibration(const CalibrationModel &model, const std::string &path) {
  internal::Json j;
  j["version"] = 1;
  j["effective_prior"] = model.effective_prior;
  j["use_qm"] = model.use_qm;
  j["qm_dim"] = model.qm_dim;
  j["qm_log_duration"] = model.qm_features.log_duration;
  j["qm_embedding_norm"] = model.qm_features.embedding_norm;
  j["global"] = ParamsToJson(model.global);
  internal::Json parts = internal::Json::object();
  for (const auto &[name, p] : model.partitions) parts[name] = ParamsToJson(p);
  j["partitions"] = parts;
  internal::SaveJsonFile(j, path);
}

CalibrationModel LoadCalibration(const std::string &path) {
  internal::Json j = internal::LoadJsonFile(path);
  CalibrationModel model;
  model.effective_prior =
      internal::Require(j, "effective_prior", path).get<double>();
  model.use_qm = internal::Require(j, "use_qm", path).get<bool>();
  model.qm_dim = internal::Require(j, "qm_dim", path).get<int>();
  model.qm_features.log_duration =
      internal::Require(j, "qm_log_duration", path).get<bool>();
  model.qm_features.embedding_norm =
      internal::Require(j, "qm_embedding_norm", path).get<bool>();
  model.global = ParamsFromJson(internal::Require(j, "global", path), path);
  for (const auto &[name, p] :
       internal::Require(j, "partitions", path).items())
    model.partitions[name] = ParamsFromJson(p, path);
  return model;
}

}  // namespace svkit
