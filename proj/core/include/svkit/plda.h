// core/include/svkit/plda.h

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

#ifndef SVKIT_PLDA_H_
#define SVKIT_PLDA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svkit/embedding.h"
#include "svkit/linalg.h"
#include "svkit/trials.h"

namespace svkit {

// Carried along by adapted models so a model file records how it was made.
struct AdaptProvenance {
  std::string method;  // "coral" or "coral+"
  double gamma = 0.0;
  double beta = 0.0;
};

// Two-covariance generative model: x = mu + y + eps with y ~ N(0, phi_b)
// between speakers and eps ~ N(0, phi_w) within a speaker.
struct PldaModel {
  Vector mu;
  Matrix phi_b;  // symmetric PSD
  Matrix phi_w;  // symmetric PD
  std::optional<AdaptProvenance> provenance;

  int Dim() const { return static_cast<int>(mu.size()); }

  // Symmetry, PSD (eigenvalues >= -1e-10 trace/d), finiteness; DataError.
  void Validate() const;
};

struct PldaTrainConfig {
  int max_iters = 50;
  double loglik_rel_tol = 1e-6;
  // Reserved; initialization is deterministic from the data (within and
  // between scatter), so no randomness is consumed.
  uint64_t seed = 0;
};

struct PldaTrainResult {
  PldaModel model;
  // Observed-data log-likelihood after each EM iteration, non-decreasing.
  std::vector<double> loglik_trace;
};

// EM training.  Needs speaker labels on every item and at least 2 distinct
// speakers.  mu is fixed at the global segment mean, which keeps the trace
// above monotone; covariances are floored per iteration (1e-8 trace/d).
PldaTrainResult TrainPlda(const EmbeddingSet &data,
                          const PldaTrainConfig &cfg);

// Verification LLR: log N([e;t]; tied-speaker joint) - log N([e;t];
// independent joint).  Precomputes the quadratic forms once; symmetric in
// (enroll, test) by construction.
class PldaScorer {
 public:
  explicit PldaScorer(const PldaModel &model);
  double Score(const Vector &enroll, const Vector &test) const;

 private:
  Vector mu_;
  Matrix a_;  // (phi + phi_b)^{-1} - phi^{-1}, acts on (e + t)/sqrt(2)
  Matrix b_;  // phi_w^{-1} - phi^{-1}, acts on (e - t)/sqrt(2)
  double c_;  // log-determinant constant
};

double ScoreLlr(const PldaModel &model, const Embedding &enroll,
                const Embedding &test);

// One score per trial, order preserved.  Unknown ids raise DataError naming
// the id and trial line.  num_threads > 1 splits trials across threads into
// preassigned slots; output is bitwise identical to the serial run.
TrialScores ScoreTrials(const PldaModel &model, const EmbeddingSet &enroll,
                        const EmbeddingSet &test, const TrialScores &trials,
                        int num_threads = 1);

// Affine shift applied after sampling, emulating a domain mismatch.
struct DomainTransform {
  Matrix a;
  Vector shift;
};

// Draws n_speakers * n_per_speaker segments from the model.  Ids are
// "spk<I>_seg<J>", speaker labels "spk<I>".  Deterministic given seed.
EmbeddingSet SampleEmbeddings(
    const PldaModel &model, int n_speakers, int n_per_speaker, uint64_t seed,
    const std::optional<DomainTransform> &transform = std::nullopt);

// Model file I/O.  JSON schema: {version, dim, mu, phi_b, phi_w} with
// row-major matrix arrays, plus optional {provenance: {method, gamma, beta}}.
// The binary variant ("PLDM") mirrors the tensor container with f64 payloads
// and exists for bit-exact round-trips of trained models.
void SavePldaModel(const PldaModel &model, const std::string &path);
PldaModel LoadPldaModel(const std::string &path);
void SavePldaModelBinary(const PldaModel &model, const std::string &path);
PldaModel LoadPldaModelBinary(const std::string &path);

}  // namespace svkit

#endif  // SVKIT_PLDA_H_
