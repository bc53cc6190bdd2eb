// core/src/synth.cc

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

#include "svkit/synth.h"

#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "svkit/error.h"

namespace svkit {

namespace {

Vector GaussianVector(int dim, Rng *rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = rng->Gaussian();
  return v;
}

float RandomDuration(double lo_s, double hi_s, Rng *rng) {
  double u = rng->Uniform(std::log(lo_s), std::log(hi_s));
  return static_cast<float>(std::exp(u));
}

void CheckScenarioConfig(const ScenarioConfig &cfg) {
  if (cfg.dim < 1) throw DataError("scenario dim must be positive");
  if (cfg.ood_speakers < 2 || cfg.ind_stat_speakers < 2 ||
      cfg.trial_speakers < 2) {
    throw DataError("scenario needs at least 2 speakers per pool");
  }
  if (cfg.ood_segs_per_speaker < 1 || cfg.ind_stat_segs_per_speaker < 1 ||
      cfg.test_segs_per_speaker < 1) {
    throw DataError("scenario needs at least 1 segment per speaker");
  }
  if (cfg.nontargets_per_test < 1 ||
      cfg.nontargets_per_test > cfg.trial_speakers - 1) {
    throw DataError("nontargets_per_test must lie in [1, trial_speakers - 1]");
  }
  if (cfg.between_scale <= 0 || cfg.within_scale <= 0) {
    throw DataError("model scales must be positive");
  }
  if (cfg.shift_scale_lo <= 0 || cfg.shift_scale_hi < cfg.shift_scale_lo) {
    throw DataError("shift scales must satisfy 0 < lo <= hi");
  }
  if (cfg.mean_shift_scale < 0) {
    throw DataError("mean_shift_scale must be non-negative");
  }
  if (cfg.duration_lo_s <= 0 || cfg.duration_hi_s < cfg.duration_lo_s) {
    throw DataError("durations must satisfy 0 < lo <= hi");
  }
  if (cfg.num_partitions < 0) {
    throw DataError("num_partitions must be non-negative");
  }
}

}  // namespace

Matrix RandomOrthogonal(int dim, Rng *rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng->Gaussian();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Positive R diagonal makes the factorization, and hence the draw, unique.
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix RandomSpd(int dim, double eig_lo, double eig_hi, Rng *rng) {
  if (eig_lo <= 0 || eig_hi < eig_lo) {
    throw DataError("RandomSpd needs 0 < eig_lo <= eig_hi");
  }
  Matrix q = RandomOrthogonal(dim, rng);
  Vector eigs(dim);
  for (int i = 0; i < dim; ++i) eigs[i] = rng->Uniform(eig_lo, eig_hi);
  return Symmetrize(q * eigs.asDiagonal() * q.transpose());
}

PldaModel RandomPldaModel(int dim, double between_scale, double within_scale,
                          Rng *rng) {
  PldaModel model;
  model.mu = GaussianVector(dim, rng);
  model.phi_b = RandomSpd(dim, 0.5 * between_scale, 2.0 * between_scale, rng);
  model.phi_w = RandomSpd(dim, 0.5 * within_scale, 2.0 * within_scale, rng);
  return model;
}

DomainTransform RandomDomainShift(int dim, double scale_lo, double scale_hi,
                                  double mean_shift_scale, Rng *rng) {
  if (scale_lo <= 0 || scale_hi < scale_lo) {
    throw DataError("RandomDomainShift needs 0 < scale_lo <= scale_hi");
  }
  Matrix q = RandomOrthogonal(dim, rng);
  Vector eigs(dim);
  for (int i = 0; i < dim; ++i) {
    eigs[i] = std::exp(rng->Uniform(std::log(scale_lo), std::log(scale_hi)));
  }
  DomainTransform t;
  t.a = Symmetrize(q * eigs.asDiagonal() * q.transpose());
  t.shift = mean_shift_scale * GaussianVector(dim, rng);
  return t;
}

PldaModel TransformModel(const PldaModel &model, const DomainTransform &t) {
  PldaModel out;
  out.mu = t.a * model.mu + t.shift;
  out.phi_b = Symmetrize(t.a * model.phi_b * t.a.transpose());
  out.phi_w = Symmetrize(t.a * model.phi_w * t.a.transpose());
  return out;
}

Scenario MakeScenario(const ScenarioConfig &cfg) {
  CheckScenarioConfig(cfg);
  Rng rng(cfg.seed);

  Scenario sc;
  sc.ood_model =
      RandomPldaModel(cfg.dim, cfg.between_scale, cfg.within_scale, &rng);
  sc.shift = RandomDomainShift(cfg.dim, cfg.shift_scale_lo, cfg.shift_scale_hi,
                               cfg.mean_shift_scale, &rng);
  sc.ind_model = TransformModel(sc.ood_model, sc.shift);

  uint64_t ood_seed = rng.engine()();
  uint64_t ind_seed = rng.engine()();
  uint64_t trial_seed = rng.engine()();

  sc.ood_train = SampleEmbeddings(sc.ood_model, cfg.ood_speakers,
                                  cfg.ood_segs_per_speaker, ood_seed);
  for (auto &item : sc.ood_train.items) item.domain = "ood";

  sc.ind_stats = SampleEmbeddings(sc.ind_model, cfg.ind_stat_speakers,
                                  cfg.ind_stat_segs_per_speaker, ind_seed);
  for (auto &item : sc.ind_stats.items) item.domain = "ind";

  // One pool per trial speaker: segment 0 enrolls, the rest are tests.
  EmbeddingSet pool =
      SampleEmbeddings(sc.ind_model, cfg.trial_speakers,
                       1 + cfg.test_segs_per_speaker, trial_seed);
  sc.enroll.dim = cfg.dim;
  sc.test.dim = cfg.dim;
  std::vector<std::vector<int>> tests_of(cfg.trial_speakers);
  std::unordered_map<std::string, int> speaker_index;
  for (auto &item : pool.items) {
    item.domain = "ind";
    item.duration_s = RandomDuration(cfg.duration_lo_s, cfg.duration_hi_s,
                                     &rng);
    auto ins = speaker_index.emplace(*item.speaker,
                                     static_cast<int>(speaker_index.size()));
    int spk = ins.first->second;
    if (tests_of[spk].empty() && ins.second) {
      sc.enroll.items.push_back(item);
      tests_of[spk].push_back(-1);  // enroll slot taken
    } else {
      if (cfg.num_partitions > 0) {
        item.partition =
            "c" + std::to_string(rng.Index(
                      static_cast<uint64_t>(cfg.num_partitions)));
      }
      tests_of[spk].push_back(static_cast<int>(sc.test.items.size()));
      sc.test.items.push_back(item);
    }
  }

  // Targets first per test segment, then sampled distinct impostor
  // enrollments (partial Fisher-Yates keeps pairs unique per segment).
  for (int spk = 0; spk < cfg.trial_speakers; ++spk) {
    const std::string &enroll_id = sc.enroll.items[spk].id;
    for (size_t k = 1; k < tests_of[spk].size(); ++k) {
      const Embedding &test_item = sc.test.items[tests_of[spk][k]];
      TrialRecord target;
      target.enroll_id = enroll_id;
      target.test_id = test_item.id;
      target.key = TrialKey::kTarget;
      target.partition = test_item.partition;
      sc.trials.records.push_back(std::move(target));

      std::vector<int> others;
      others.reserve(cfg.trial_speakers - 1);
      for (int o = 0; o < cfg.trial_speakers; ++o) {
        if (o != spk) others.push_back(o);
      }
      for (int j = 0; j < cfg.nontargets_per_test; ++j) {
        uint64_t pick = j + rng.Index(others.size() - j);
        std::swap(others[j], others[pick]);
        TrialRecord non;
        non.enroll_id = sc.enroll.items[others[j]].id;
        non.test_id = test_item.id;
        non.key = TrialKey::kNontarget;
        non.partition = test_item.partition;
        sc.trials.records.push_back(std::move(non));
      }
    }
  }
  return sc;
}

TrialScores SampleLlrTrials(const PldaModel &model, int n_targets,
                            int n_nontargets, uint64_t seed) {
  model.Validate();
  if (n_targets < 1 || n_nontargets < 1) {
    throw DataError("SampleLlrTrials needs at least one trial per class");
  }
  Rng rng(seed);
  int dim = model.Dim();
  Matrix broot = SymmetricSqrt(model.phi_b);
  Matrix wroot = SymmetricSqrt(model.phi_w);
  PldaScorer scorer(model);

  TrialScores out;
  out.records.reserve(n_targets + n_nontargets);
  for (int i = 0; i < n_targets; ++i) {
    Vector y = broot * GaussianVector(dim, &rng);
    Vector e = model.mu + y + wroot * GaussianVector(dim, &rng);
    Vector t = model.mu + y + wroot * GaussianVector(dim, &rng);
    TrialRecord rec;
    rec.enroll_id = "tgt" + std::to_string(i) + "_e";
    rec.test_id = "tgt" + std::to_string(i) + "_t";
    rec.key = TrialKey::kTarget;
    rec.score = scorer.Score(e, t);
    out.records.push_back(std::move(rec));
  }
  for (int i = 0; i < n_nontargets; ++i) {
    Vector e =
        model.mu + broot * GaussianVector(dim, &rng) +
        wroot * GaussianVector(dim, &rng);
    Vector t =
        model.mu + broot * GaussianVector(dim, &rng) +
        wroot * GaussianVector(dim, &rng);
    TrialRecord rec;
    rec.enroll_id = "non" + std::to_string(i) + "_e";
    rec.test_id = "non" + std::to_string(i) + "_t";
    rec.key = TrialKey::kNontarget;
    rec.score = scorer.Score(e, t);
    out.records.push_back(std::move(rec));
  }
  return out;
}

TrialScores PerturbScores(const TrialScores &scores, double scale,
                          double offset, double noise_sd, uint64_t seed) {
  if (noise_sd < 0) throw DataError("noise_sd must be non-negative");
  Rng rng(seed);
  TrialScores out = scores;
  for (auto &rec : out.records) {
    rec.score = scale * rec.score + offset + noise_sd * rng.Gaussian();
  }
  return out;
}

}  // namespace svkit
