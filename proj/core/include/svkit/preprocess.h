// core/include/svkit/preprocess.h

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

#ifndef SVKIT_PREPROCESS_H_
#define SVKIT_PREPROCESS_H_

#include <string>

#include "svkit/embedding.h"
#include "svkit/linalg.h"

namespace svkit {

// Center -> whiten -> (optional) length-normalize.  The whitener is the
// symmetric-eigendecomposition form W = U Lambda^{-1/2}, so W^T Sigma W = I
// on the fitting set.  Immutable after fitting.
struct PreprocessChain {
  Vector mean;
  Matrix whitener;
  bool apply_length_norm = false;
};

// Fits mean and whitener on the training set.  The sample covariance is the
// unbiased (n-1) estimate.  Throws DataError when the set is too small
// (needs >= d+1 items) and NumericalError when the covariance has an
// eigenvalue at or below 1e-10 * trace/d; reduce dimensionality first in
// that case.
PreprocessChain FitPreprocess(const EmbeddingSet &train,
                              bool apply_length_norm);

// v <- W^T (v - mean), then v <- v/|v| when length-norm is on.  Ids and
// metadata are carried through untouched.  Throws DataError on a dimension
// mismatch or a zero-norm vector under length-norm.
EmbeddingSet ApplyPreprocess(const PreprocessChain &chain,
                             const EmbeddingSet &set);

// JSON round-trip with full decimal precision.
void SavePreprocess(const PreprocessChain &chain, const std::string &path);
PreprocessChain LoadPreprocess(const std::string &path);

}  // namespace svkit

#endif  // SVKIT_PREPROCESS_H_
