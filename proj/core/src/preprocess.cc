// core/src/preprocess.cc

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

#include "svkit/preprocess.h"

#include "json_util.h"
#include "svkit/error.h"

namespace svkit {

PreprocessChain FitPreprocess(const EmbeddingSet &train,
                              bool apply_length_norm) {
  train.Validate();
  const int d = train.dim;
  const int n = static_cast<int>(train.items.size());
  if (n < d + 1)
    throw DataError("whitening needs at least dim+1 = " + std::to_string(d + 1) +
                    " embeddings, got " + std::to_string(n));

  Vector mean = Vector::Zero(d);
  for (const Embedding &e : train.items) mean += e.vector;
  mean /= n;

  Matrix cov = Matrix::Zero(d, d);
  for (const Embedding &e : train.items) {
    Vector c = e.vector - mean;
    cov.noalias() += c * c.transpose();
  }
  cov /= (n - 1);
  cov = Symmetrize(cov);

  SymEig eig = SymmetricEig(cov);
  const double floor = 1e-10 * cov.trace() / d;
  if (eig.values.minCoeff() <= floor)
    throw NumericalError(
        "training covariance is rank-deficient (smallest eigenvalue " +
        std::to_string(eig.values.minCoeff()) + " under floor " +
        std::to_string(floor) + "); reduce the embedding dimensionality");

  PreprocessChain chain;
  chain.mean = mean;
  chain.whitener =
      eig.vectors * eig.values.cwiseSqrt().cwiseInverse().asDiagonal();
  chain.apply_length_norm = apply_length_norm;
  return chain;
}

EmbeddingSet ApplyPreprocess(const PreprocessChain &chain,
                             const EmbeddingSet &set) {
  if (set.dim != chain.mean.size())
    throw DataError("preprocess chain dim " + std::to_string(chain.mean.size()) +
                    " does not match set dim " + std::to_string(set.dim));
  EmbeddingSet out;
  out.dim = set.dim;
  out.items.reserve(set.items.size());
  for (const Embedding &e : set.items) {
    Embedding t = e;
    t.vector = chain.whitener.transpose() * (e.vector - chain.mean);
    if (chain.apply_length_norm) {
      double norm = t.vector.norm();
      if (norm == 0.0)
        throw DataError("cannot length-normalize zero vector '" + e.id + "'");
      t.vector /= norm;
    }
    out.items.push_back(std::move(t));
  }
  return out;
}

void SavePreprocess(const PreprocessChain &chain, const std::string &path) {
  internal::Json j;
  j["version"] = 1;
  j["dim"] = chain.mean.size();
  j["apply_length_norm"] = chain.apply_length_norm;
  j["mean"] = internal::VectorToJson(chain.mean);
  j["whitener"] = internal::MatrixToJson(chain.whitener);
  internal::SaveJsonFile(j, path);
}

PreprocessChain LoadPreprocess(const std::string &path) {
  internal::Json j = internal::LoadJsonFile(path);
  auto dim = internal::Require(j, "dim", path).get<Eigen::Index>();
  if (dim <= 0) throw DataError("non-positive dim in " + path);
  PreprocessChain chain;
  chain.mean = internal::VectorFromJson(internal::Require(j, "mean", path), "mean");
  if (chain.mean.size() != dim) throw DataError("mean length mismatch in " + path);
  chain.whitener = internal::MatrixFromJson(
      internal::Require(j, "whitener", path), dim, dim, "whitener");
  chain.apply_length_norm =
      internal::Require(j, "apply_length_norm", path).get<bool>();
  if (!AllFinite(chain.whitener) || !AllFinite(chain.mean))
    throw DataError("non-finite preprocess parameters in " + path);
  return chain;
}

}  // namespace svkit
