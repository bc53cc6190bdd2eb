// tests/circle_test.cc

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

#include "svkit/circle.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "svkit/error.h"
#include "svkit/rng.h"
#include "testutil.h"

using svkit::CircleLossParams;
using svkit::CircleLossResult;
using svkit::Matrix;
using svkit::Vector;

namespace {

Vector RandomCosines(int c, svkit::Rng *rng) {
  Vector v(c);
  for (int i = 0; i < c; i++) v(i) = 2.0 * rng->Uniform() - 1.0;
  return v;
}

// Loss recomputed the direct way, shifting by the max logit by hand.
double OracleLoss(const Vector &cosines, int y,
                  const CircleLossParams &p) {
  int c = static_cast<int>(cosines.size());
  std::vector<double> logits(c);
  for (int j = 0; j < c; j++) {
    if (j == y)
      logits[j] = p.s * (p.m * p.m - std::pow(1.0 - cosines(j), 2));
    else
      logits[j] = p.s * (cosines(j) * cosines(j) - p.m * p.m);
  }
  double hi = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - hi);
  return hi + std::log(sum) - logits[y];
}

}  // namespace

TEST_CASE("two-class loss matches the hand-computed value") {
  // cos_y = 1, cos_neg = -1, s = 60, m = 0.35:
  // t_y = 60 * 0.1225 = 7.35, t_neg = 60 * (1 - 0.1225) = 52.65,
  // loss = log(1 + exp(52.65 - 7.35)) = 45.3 up to 2e-20.
  Vector cosines(2);
  cosines << 1.0, -1.0;
  CircleLossParams p;
  CircleLossResult r = svkit::CircleLoss(cosines, 0, p);
  CHECK(r.loss == doctest::Approx(45.3).epsilon(1e-12));
}

TEST_CASE("loss equals a direct logsumexp recomputation") {
  svkit::Rng rng(801);
  CircleLossParams p;
  for (int trial = 0; trial < 200; trial++) {
    int c = 2 + static_cast<int>(rng.Index(9));
    Vector cosines = RandomCosines(c, &rng);
    int y = static_cast<int>(rng.Index(c));
    CircleLossResult r = svkit::CircleLoss(cosines, y, p);
    double want = OracleLoss(cosines, y, p);
    CHECK(std::abs(r.loss - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    CHECK(r.loss >= 0.0);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  svkit::Rng rng(802);
  for (double m : {0.35, 0.40}) {
    CircleLossParams p;
    p.m = m;
    for (int trial = 0; trial < 100; trial++) {
      int c = 2 + static_cast<int>(rng.Index(6));
      // Stay clear of the [-1, 1] edges so the symmetric step is legal.
      Vector cosines(c);
      for (int i = 0; i < c; i++) cosines(i) = 1.9 * rng.Uniform() - 0.95;
      int y = static_cast<int>(rng.Index(c));
      CircleLossResult r = svkit::CircleLoss(cosines, y, p);
      const double h = 1e-6;
      for (int k = 0; k < c; k++) {
        Vector up = cosines, dn = cosines;
        up(k) += h;
        dn(k) -= h;
        double fd = (OracleLoss(up, y, p) - OracleLoss(dn, y, p)) / (2 * h);
        double scale = std::max({1.0, std::abs(fd), std::abs(r.grad(k))});
        CHECK(std::abs(r.grad(k) - fd) <= 2e-5 * scale);
      }
    }
  }
}

TEST_CASE("gradient signs push scores the right way on [0, 1)") {
  // Raising a non-target cosine in [0, 1) raises its logit, so the loss
  // gradient there is nonnegative; the target gradient is nonpositive.
  svkit::Rng rng(803);
  CircleLossParams p;
  for (int trial = 0; trial < 200; trial++) {
    int c = 2 + static_cast<int>(rng.Index(6));
    Vector cosines(c);
    for (int i = 0; i < c; i++) cosines(i) = 0.999 * rng.Uniform();
    int y = static_cast<int>(rng.Index(c));
    CircleLossResult r = svkit::CircleLoss(cosines, y, p);
    for (int k = 0; k < c; k++) {
      if (k == y)
        CHECK(r.grad(k) <= 0.0);
      else
        CHECK(r.grad(k) >= 0.0);
    }
  }
}

TEST_CASE("extreme cosines stay finite at full scale") {
  CircleLossParams p;  // s = 60
  for (double a : {-1.0, 1.0})
    for (double b : {-1.0, 1.0}) {
      Vector cosines(2);
      cosines << a, b;
      CircleLossResult r = svkit::CircleLoss(cosines, 0, p);
      CHECK(std::isfinite(r.loss));
      CHECK(std::isfinite(r.grad(0)));
      CHECK(std::isfinite(r.grad(1)));
    }
  // A larger class count with adversarial extremes.
  Vector many = Vector::Ones(50);
  CircleLossResult r = svkit::CircleLoss(many, 0, p);
  CHECK(std::isfinite(r.loss));
  CHECK(r.grad.array().isFinite().all());
}

TEST_CASE("invalid inputs are rejected") {
  CircleLossParams p;
  Vector cosines(2);
  cosines << 0.5, -0.5;
  CHECK_THROWS_AS(svkit::CircleLoss(cosines, 2, p), svkit::DataError);
  CHECK_THROWS_AS(svkit::CircleLoss(cosines, -1, p), svkit::DataError);
  CHECK_THROWS_AS(svkit::CircleLoss(Vector::Ones(1), 0, p),
                  svkit::DataError);
  Vector bad(2);
  bad << 1.5, 0.0;
  CHECK_THROWS_AS(svkit::CircleLoss(bad, 0, p), svkit::DataError);

  CircleLossParams neg_s;
  neg_s.s = -1.0;
  CHECK_THROWS_AS(svkit::CircleLoss(cosines, 0, neg_s), svkit::DataError);
  CircleLossParams big_m;
  big_m.m = 1.5;
  CHECK_THROWS_AS(svkit::CircleLoss(cosines, 0, big_m), svkit::DataError);
}

TEST_CASE("cosines against classes normalize both sides") {
  Vector e(2);
  e << 3.0, 4.0;
  Matrix w(2, 2);
  w << 10.0, 0.0, 0.0, -2.0;
  Vector cosines = svkit::CosinesAgainstClasses(e, w);
  REQUIRE(cosines.size() == 2);
  CHECK(cosines(0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(cosines(1) == doctest::Approx(-0.8).epsilon(1e-12));
  CHECK_THROWS_AS(
      svkit::CosinesAgainstClasses(Vector::Zero(2), w), svkit::DataError);
}
