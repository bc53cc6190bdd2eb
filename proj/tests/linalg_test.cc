// tests/linalg_test.cc

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

#include "doctest.h"
#include "svkit/error.h"
#include "svkit/rng.h"
#include "svkit/synth.h"
#include "testutil.h"

using svkit::Matrix;
using svkit::Vector;

TEST_CASE("symmetric eig reconstructs and is orthonormal") {
  svkit::Rng rng(101);
  for (int d : {1, 2, 5, 16}) {
    Matrix a = svkit::RandomSpd(d, 0.3, 4.0, &rng);
    svkit::SymEig eig = svkit::SymmetricEig(a);
    Matrix recon =
        eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
    CHECK((recon - a).norm() <= 1e-12 * a.norm());
    Matrix gram = eig.vectors.transpose() * eig.vectors;
    CHECK((gram - Matrix::Identity(d, d)).norm() <= 1e-12);
  }
}

TEST_CASE("symmetric sqrt squares back") {
  svkit::Rng rng(102);
  for (int d : {1, 3, 8}) {
    Matrix a = svkit::RandomSpd(d, 0.1, 9.0, &rng);
    Matrix s = svkit::SymmetricSqrt(a);
    CHECK((s * s - a).norm() <= 1e-11 * a.norm());
    CHECK(svkit::SymmetryGap(s) <= 1e-14 * s.norm());
  }
}

TEST_CASE("inverse sqrt is the inverse of the sqrt") {
  svkit::Rng rng(103);
  Matrix a = svkit::RandomSpd(6, 0.2, 5.0, &rng);
  Matrix s = svkit::SymmetricSqrt(a);
  Matrix si = svkit::SymmetricInvSqrt(a);
  CHECK((s * si - Matrix::Identity(6, 6)).norm() <= 1e-11);
  // Whitening identity that CORAL relies on.
  CHECK((si * a * si - Matrix::Identity(6, 6)).norm() <= 1e-11);
}

TEST_CASE("scalar cases match std::sqrt") {
  Matrix a(1, 1);
  a(0, 0) = 7.3;
  CHECK(svkit::SymmetricSqrt(a)(0, 0) == doctest::Approx(std::sqrt(7.3)));
  CHECK(svkit::SymmetricInvSqrt(a)(0, 0) ==
        doctest::Approx(1.0 / std::sqrt(7.3)));
  CHECK(svkit::LogDetSpd(a) == doctest::Approx(std::log(7.3)));
}

TEST_CASE("logdet matches an eigenvalue oracle") {
  // LogDetSpd goes through a Cholesky factor, so sum-of-log-eigenvalues is
  // an independent route to the same number.
  svkit::Rng rng(104);
  for (int d : {2, 7, 12}) {
    Matrix a = svkit::RandomSpd(d, 0.05, 20.0, &rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    REQUIRE(es.info() == Eigen::Success);
    double oracle = es.eigenvalues().array().log().sum();
    CHECK(svkit::LogDetSpd(a) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("floor raises only the low eigenvalues") {
  svkit::Rng rng(105);
  Matrix q = svkit::RandomOrthogonal(4, &rng);
  Vector eigs(4);
  eigs << 4.0, 1.0, 1e-14, -1e-13;
  Matrix a = q * eigs.asDiagonal() * q.transpose();
  double rel = 1e-8;
  Matrix floored = svkit::FloorSpd(a, rel);
  svkit::SymEig eig = svkit::SymmetricEig(floored);
  // The floor is relative to the input trace; the shift form adds it to the
  // whole spectrum, so every eigenvalue clears it minus rounding.
  double floor_abs = rel * a.trace() / 4.0;
  for (int i = 0; i < 4; i++) CHECK(eig.values(i) >= floor_abs - 1e-12);
  // The healthy part of the spectrum moves by at most the floor.
  CHECK(eig.values.maxCoeff() >= 4.0 - 1e-12);
  CHECK(eig.values.maxCoeff() <= 4.0 + 2.0 * floor_abs);
  Matrix good = svkit::RandomSpd(4, 1.0, 2.0, &rng);
  CHECK((svkit::FloorSpd(good, rel) - good).norm() <= 1e-12 * good.norm());
}

TEST_CASE("non-spd input is rejected where positivity is required") {
  Matrix neg = -Matrix::Identity(3, 3);
  CHECK_THROWS_AS(svkit::SymmetricInvSqrt(neg), svkit::NumericalError);
  CHECK_THROWS_AS(svkit::LogDetSpd(neg), svkit::NumericalError);
}

TEST_CASE("symmetrize and the gap measure") {
  Matrix a(2, 2);
  a << 1.0, 2.0, 4.0, 3.0;
  Matrix s = svkit::Symmetrize(a);
  CHECK(s(0, 1) == doctest::Approx(3.0));
  CHECK(s(1, 0) == doctest::Approx(3.0));
  CHECK(svkit::SymmetryGap(s) == 0.0);
  CHECK(svkit::SymmetryGap(a) > 0.0);
}

TEST_CASE("finiteness checks") {
  Matrix a = Matrix::Identity(2, 2);
  CHECK(svkit::AllFinite(a));
  a(0, 1) = std::nan("");
  CHECK_FALSE(svkit::AllFinite(a));
  Vector v = Vector::Zero(3);
  CHECK(svkit::AllFinite(v));
  v(2) = INFINITY;
  CHECK_FALSE(svkit::AllFinite(v));
}
