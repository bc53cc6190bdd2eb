// core/src/linalg.cc

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

#include "svkit/linalg.h"

#include <cmath>

#include "svkit/error.h"

namespace svkit {

SymEig SymmetricEig(const Matrix &a) {
  if (a.rows() != a.cols())
    throw NumericalError("SymmetricEig: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Matrix> es(Symmetrize(a));
  if (es.info() != Eigen::Success)
    throw NumericalError("SymmetricEig: eigendecomposition failed");
  SymEig out{es.eigenvectors(), es.eigenvalues()};
  // Canonical signs: flip each column so its largest-magnitude entry is
  // positive.
  for (Eigen::Index j = 0; j < out.vectors.cols(); j++) {
    Eigen::Index imax = 0;
    out.vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.vectors(imax, j) < 0.0) out.vectors.col(j) = -out.vectors.col(j);
  }
  return out;
}

static Matrix SymmetricPower(const Matrix &a, double power,
                             double eig_floor_rel) {
  SymEig eig = SymmetricEig(a);
  double trace = eig.values.sum();
  if (trace < 0.0)
    throw NumericalError("SymmetricPower: matrix has negative trace");
  if (trace == 0.0) {
    // The zero matrix: its positive powers are zero, negative ones undefined.
    if (power > 0.0) return Matrix::Zero(a.rows(), a.cols());
    throw NumericalError("SymmetricPower: negative power of a zero matrix");
  }
  double floor = eig_floor_rel * trace / static_cast<double>(a.rows());
  Vector powered(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); i++)
    powered[i] = std::pow(std::max(eig.values[i], floor), power);
  return Symmetrize(eig.vectors * powered.asDiagonal() *
                    eig.vectors.transpose());
}

Matrix SymmetricSqrt(const Matrix &a, double eig_floor_rel) {
  return SymmetricPower(a, 0.5, eig_floor_rel);
}

Matrix SymmetricInvSqrt(const Matrix &a, double eig_floor_rel) {
  return SymmetricPower(a, -0.5, eig_floor_rel);
}

Matrix FloorSpd(const Matrix &a, double floor_rel) {
  SymEig eig = SymmetricEig(a);
  double floor = floor_rel * std::max(eig.values.sum(), 0.0) /
                 static_cast<double>(a.rows());
  if (eig.values.minCoeff() >= floor) return Symmetrize(a);
  return Symmetrize(a) + floor * Matrix::Identity(a.rows(), a.cols());
}

double LogDetSpd(const Matrix &a) {
  Eigen::LLT<Matrix> llt(Symmetrize(a));
  if (llt.info() != Eigen::Success)
    throw NumericalError("LogDetSpd: Cholesky failed; matrix not SPD");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

bool AllFinite(const Matrix &a) { return a.allFinite(); }
bool AllFinite(const Vector &v) { return v.allFinite(); }

double SymmetryGap(const Matrix &a) {
  return (a - a.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace svkit
