// core/include/svkit/synth.h

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

#ifndef SVKIT_SYNTH_H_
#define SVKIT_SYNTH_H_

#include <cstdint>

#include "svkit/embedding.h"
#include "svkit/linalg.h"
#include "svkit/plda.h"
#include "svkit/rng.h"
#include "svkit/trials.h"

namespace svkit {

// Synthetic experiment builders.  Everything here is deterministic given the
// seed and draws from known generative models, so downstream quantities
// (true LLRs, true covariances, the exact domain shift) are available as
// oracles.

Matrix RandomOrthogonal(int dim, Rng *rng);

// Q diag(eigs) Q^T with eigenvalues uniform in [eig_lo, eig_hi].
Matrix RandomSpd(int dim, double eig_lo, double eig_hi, Rng *rng);

// Random mean (standard normal entries) and random SPD covariances with
// eigenvalues in [0.5, 2] times the given scales.
PldaModel RandomPldaModel(int dim, double between_scale, double within_scale,
                          Rng *rng);

// x -> A x + shift with A SPD, eigenvalues log-uniform in
// [scale_lo, scale_hi], and shift entries N(0, mean_shift_scale^2).
DomainTransform RandomDomainShift(int dim, double scale_lo, double scale_hi,
                                  double mean_shift_scale, Rng *rng);

// Ground-truth model of the transformed data: mu -> A mu + shift,
// phi -> A phi A^T.
PldaModel TransformModel(const PldaModel &model, const DomainTransform &t);

struct ScenarioConfig {
  int dim = 12;

  // Out-of-domain training pool (speaker-labeled).
  int ood_speakers = 150;
  int ood_segs_per_speaker = 8;

  // In-domain pool used only for domain statistics (no trial overlap).
  int ind_stat_speakers = 80;
  int ind_stat_segs_per_speaker = 4;

  // In-domain trial side: one enrollment segment per speaker plus
  // test_segs_per_speaker test segments, target trials within speaker and
  // nontargets_per_test sampled cross-speaker pairs per test segment.
  int trial_speakers = 80;
  int test_segs_per_speaker = 4;
  int nontargets_per_test = 40;

  // Generative model and shift.
  double between_scale = 1.0;
  double within_scale = 1.0;
  double shift_scale_lo = 0.75;
  double shift_scale_hi = 1.6;
  double mean_shift_scale = 0.8;

  // Segment durations, log-uniform; used by quality measures.
  double duration_lo_s = 3.0;
  double duration_hi_s = 60.0;

  // 0 disables partition labels; otherwise test segments get a uniform
  // label "c0".."c<k-1>" that trials inherit.
  int num_partitions = 0;

  uint64_t seed = 42;
};

struct Scenario {
  PldaModel ood_model;  // ground truth behind ood_train
  PldaModel ind_model;  // ground truth behind the in-domain sets
  DomainTransform shift;
  EmbeddingSet ood_train;
  EmbeddingSet ind_stats;
  EmbeddingSet enroll;
  EmbeddingSet test;
  TrialScores trials;  // keyed, scores zero
};

Scenario MakeScenario(const ScenarioConfig &cfg);

// n_targets same-speaker and n_nontargets cross-speaker pairs drawn from the
// model and scored with its exact LLR; the returned scores are calibrated by
// construction.
TrialScores SampleLlrTrials(const PldaModel &model, int n_targets,
                            int n_nontargets, uint64_t seed);

// scale * s + offset + N(0, noise_sd^2) per record, ids and keys preserved;
// distinct seeds emulate systems with independent error on one trial list.
TrialScores PerturbScores(const TrialScores &scores, double scale,
                          double offset, double noise_sd, uint64_t seed);

}  // namespace svkit

#endif  // SVKIT_SYNTH_H_
