// core/src/coral.cc

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

#include "svkit/coral.h"

#include <algorithm>

#include "svkit/error.h"

namespace svkit {

DomainStats EstimateDomainStats(const EmbeddingSet &set) {
  set.Validate();
  const int d = set.dim;
  const int n = static_cast<int>(set.items.size());
  if (n < 2)
    throw DataError("domain statistics need at least 2 embeddings, got " +
                    std::to_string(n));
  if (n < d + 1)
    SVKIT_WARN << "estimating a " << d << "-dim covariance from " << n
               << " embeddings; expect a rank-deficient estimate";

  DomainStats stats;
  stats.count = n;
  stats.mean = Vector::Zero(d);
  for (const Embedding &e : set.items) stats.mean += e.vector;
  stats.mean /= n;

  stats.total_cov = Matrix::Zero(d, d);
  for (const Embedding &e : set.items) {
    Vector c = e.vector - stats.mean;
    stats.total_cov.noalias() += c * c.transpose();
  }
  stats.total_cov = Symmetrize(stats.total_cov / (n - 1));
  return stats;
}

Matrix CoralTransform(const DomainStats &ood, const DomainStats &ind) {
  if (ood.total_cov.rows() != ind.total_cov.rows())
    throw DataError("domain covariance dims differ");
  return SymmetricInvSqrt(ood.total_cov) * SymmetricSqrt(ind.total_cov);
}

PldaModel AdaptPldaCoral(const PldaModel &model, const Matrix &m) {
  model.Validate();
  if (m.rows() != model.Dim() || m.cols() != model.Dim())
    throw DataError("transform dim does not match model dim " +
                    std::to_string(model.Dim()));
  PldaModel out = model;
  out.phi_b = Symmetrize(m.transpose() * model.phi_b * m);
  out.phi_w = Symmetrize(m.transpose() * model.phi_w * m);
  out.provenance = AdaptProvenance{"coral", 0.0, 0.0};
  return out;
}

SimulDiag SimultaneousDiagonalize(const Matrix &phi_o, const Matrix &phi_c) {
  if (phi_o.rows() != phi_c.rows() || phi_o.cols() != phi_c.cols())
    throw DataError("simultaneous diagonalization needs equal-sized matrices");
  Matrix t = SymmetricInvSqrt(phi_o);
  SymEig eig = SymmetricEig(Symmetrize(t * phi_c * t));
  SimulDiag out;
  out.basis = t * eig.vectors;
  out.diag = eig.values.cwiseMax(0.0);
  return out;
}

namespace {

// phi_out + weight * B^{-T} max(E,1) B^{-1}.  With B = phi_o^{-1/2} U the
// inverse is U^T phi_o^{1/2}, so the additive term is
// phi_o^{1/2} U max(E,1) U^T phi_o^{1/2}: congruent to a nonnegative
// diagonal, hence PSD.
Matrix AdaptBranch(const Matrix &phi_out, const Matrix &phi_c, double weight) {
  if (weight == 0.0) return phi_out;
  Matrix root = SymmetricSqrt(phi_out);
  Matrix inv_root = SymmetricInvSqrt(phi_out);
  SymEig eig = SymmetricEig(Symmetrize(inv_root * phi_c * inv_root));
  Vector e = eig.values.cwiseMax(1.0);
  Matrix additive =
      Symmetrize(root * eig.vectors * e.asDiagonal() *
                 eig.vectors.transpose() * root);
  return FloorSpd(Symmetrize(phi_out + weight * additive), 1e-10);
}

}  // namespace

PldaModel AdaptPldaCoralPlus(const PldaModel &model, const DomainStats &ind,
                             const CoralPlusConfig &cfg) {
  model.Validate();
  if (cfg.gamma < 0.0 || cfg.beta < 0.0)
    throw DataError("adaptation weights must be nonnegative");
  if (ind.total_cov.rows() != model.Dim())
    throw DataError("in-domain covariance dim does not match model dim " +
                    std::to_string(model.Dim()));

  Matrix phi_out_total = Symmetrize(model.phi_b + model.phi_w);
  DomainStats ood{model.mu, phi_out_total, 0};
  Matrix m = CoralTransform(ood, ind);
  Matrix phi_b_c = Symmetrize(m.transpose() * model.phi_b * m);
  Matrix phi_w_c = Symmetrize(m.transpose() * model.phi_w * m);

  PldaModel out = model;
  out.phi_b = AdaptBranch(model.phi_b, phi_b_c, cfg.gamma);
  out.phi_w = AdaptBranch(model.phi_w, phi_w_c, cfg.beta);
  out.provenance = AdaptProvenance{"coral+", cfg.gamma, cfg.beta};
  return out;
}

PldaModel RecenterModel(const PldaModel &model, const Vector &mean) {
  if (mean.size() != model.Dim())
    throw DataError("mean dim does not match model dim " +
                    std::to_string(model.Dim()));
  PldaModel out = model;
  out.mu = mean;
  return out;
}

}  // namespace svkit
