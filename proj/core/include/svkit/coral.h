// core/include/svkit/coral.h

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

#ifndef SVKIT_CORAL_H_
#define SVKIT_CORAL_H_

#include "svkit/embedding.h"
#include "svkit/linalg.h"
#include "svkit/plda.h"

namespace svkit {

struct DomainStats {
  Vector mean;
  Matrix total_cov;  // unbiased sample covariance, symmetrized
  int count = 0;
};

// Joint basis for a pair (phi_o SPD, phi_c PSD):
// basis^T phi_o basis = I and basis^T phi_c basis = diag(diag).
struct SimulDiag {
  Matrix basis;
  Vector diag;  // generalized eigenvalues, clipped at 0
};

struct CoralPlusConfig {
  double gamma = 0.5;  // between-class adaptation weight
  double beta = 0.5;   // within-class adaptation weight
};

// Sample mean and unbiased covariance; needs >= 2 items, warns below dim+1.
DomainStats EstimateDomainStats(const EmbeddingSet &set);

// Whiten-recolor alignment M = phi_out^{-1/2} phi_in^{1/2} using symmetric
// roots, so M^T phi_out M = phi_in.
Matrix CoralTransform(const DomainStats &ood, const DomainStats &ind);

// Pseudo-in-domain model: both covariances mapped through M^T (.) M; the
// mean is left untouched (see RecenterModel).
PldaModel AdaptPldaCoral(const PldaModel &model, const Matrix &m);

// Generalized eigendecomposition phi_c b = lambda phi_o b via whitening by
// phi_o^{-1/2}; deterministic basis ordering (eigenvalues ascending).
SimulDiag SimultaneousDiagonalize(const Matrix &phi_o, const Matrix &phi_c);

// Regularized adaptation.  Pipeline: M from the model's total covariance vs
// the in-domain covariance; pseudo-in-domain phi_{b,c}, phi_{w,c}; per
// branch, phi+ = phi_out + weight * B^{-T} max(E, 1) B^{-1} with weight
// gamma for b and beta for w.  Zero weight leaves that branch bitwise
// unchanged.  The additive term is PSD, so phi+ dominates phi_out.
PldaModel AdaptPldaCoralPlus(const PldaModel &model, const DomainStats &ind,
                             const CoralPlusConfig &cfg);

// Replaces the model mean by the in-domain sample mean.  Adaptation touches
// covariances only; recentering before scoring is a separate, optional step.
PldaModel RecenterModel(const PldaModel &model, const Vector &mean);

}  // namespace svkit

#endif  // SVKIT_CORAL_H_
