// core/include/svkit/linalg.h

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

#ifndef SVKIT_LINALG_H_
#define SVKIT_LINALG_H_

#include <Eigen/Dense>

namespace svkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SymEig {
  Matrix vectors;  // columns, eigenvalues ascending
  Vector values;
};

// Symmetric eigendecomposition with canonical eigenvector signs (largest
// magnitude component of each column made positive), so repeated runs and
// equivalent inputs give identical bases.
SymEig SymmetricEig(const Matrix &a);

inline Matrix Symmetrize(const Matrix &a) { return 0.5 * (a + a.transpose()); }

// A^{1/2} and A^{-1/2} through the symmetric eigendecomposition
// U diag(lambda)^{+-1/2} U^T.  Eigenvalues are clamped from below at
// eig_floor_rel * trace/d before the root.
Matrix SymmetricSqrt(const Matrix &a, double eig_floor_rel = 1e-10);
Matrix SymmetricInvSqrt(const Matrix &a, double eig_floor_rel = 1e-10);

// Adds floor_rel * trace/d to the diagonal when the smallest eigenvalue is
// below that value; otherwise returns the input unchanged.
Matrix FloorSpd(const Matrix &a, double floor_rel);

// log det of an SPD matrix via Cholesky; throws NumericalError when the
// factorization fails.
double LogDetSpd(const Matrix &a);

bool AllFinite(const Matrix &a);
bool AllFinite(const Vector &v);

// max_ij |a_ij - a_ji|
double SymmetryGap(const Matrix &a);

}  // namespace svkit

#endif  // SVKIT_LINALG_H_
