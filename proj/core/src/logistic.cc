// core/src/logistic.cc

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

#include "svkit/logistic.h"

#include <cmath>

#include "svkit/error.h"

namespace svkit {

namespace {

constexpr double kGradTol = 1e-8;
constexpr int kMaxIters = 10000;

double Softplus(double x) {
  return std::log1p(std::exp(-std::abs(x))) + std::max(x, 0.0);
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

struct Weights {
  double target;
  double nontarget;
  double logit_prior;
};

Weights MakeWeights(const std::vector<uint8_t> &is_target, double prior) {
  if (!(prior > 0.0 && prior < 1.0))
    throw DataError("effective prior must lie strictly inside (0,1)");
  size_t n_t = 0;
  for (uint8_t t : is_target) n_t += (t != 0);
  size_t n_n = is_target.size() - n_t;
  if (n_t == 0 || n_n == 0)
    throw DataError("logistic fit needs both targets and nontargets");
  return {prior / n_t, (1.0 - prior) / n_n,
          std::log(prior / (1.0 - prior))};
}

}  // namespace

double PriorWeightedLogisticLoss(const Matrix &features,
                                 const std::vector<uint8_t> &is_target,
                                 double prior, double l2, const Vector &anchor,
                                 const Vector &theta) {
  if (static_cast<size_t>(features.rows()) != is_target.size())
    throw DataError("feature rows and labels disagree");
  if (features.cols() != theta.size() || anchor.size() != theta.size())
    throw DataError("feature/parameter dims disagree");
  Weights w = MakeWeights(is_target, prior);
  Vector z = features * theta;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); i++) {
    double zi = z[i] + w.logit_prior;
    loss += is_target[i] ? w.target * Softplus(-zi)
                         : w.nontarget * Softplus(zi);
  }
  return loss + l2 * (theta - anchor).squaredNorm();
}

Vector PriorWeightedLogisticGrad(const Matrix &features,
                                 const std::vector<uint8_t> &is_target,
                                 double prior, double l2, const Vector &anchor,
                                 const Vector &theta) {
  if (static_cast<size_t>(features.rows()) != is_target.size())
    throw DataError("feature rows and labels disagree");
  if (features.cols() != theta.size() || anchor.size() != theta.size())
    throw DataError("feature/parameter dims disagree");
  Weights w = MakeWeights(is_target, prior);
  Vector z = features * theta;
  Vector grad = 2.0 * l2 * (theta - anchor);
  for (Eigen::Index i = 0; i < z.size(); i++) {
    double zi = z[i] + w.logit_prior;
    double sig = Sigmoid(zi);
    double gcoef = is_target[i] ? w.target * (sig - 1.0) : w.nontarget * sig;
    grad.noalias() += gcoef * features.row(i).transpose();
  }
  return grad;
}

Vector FitPriorWeightedLogistic(const Matrix &features,
                                const std::vector<uint8_t> &is_target,
                                double prior, double l2, const Vector &anchor,
                                const Vector *init) {
  if (static_cast<size_t>(features.rows()) != is_target.size())
    throw DataError("feature rows and labels disagree");
  if (anchor.size() != features.cols())
    throw DataError("anchor dim does not match feature count");
  if (l2 < 0.0) throw DataError("l2 must be nonnegative");
  if (!AllFinite(features)) throw DataError("non-finite feature value");
  Weights w = MakeWeights(is_target, prior);
  const Eigen::Index k = features.cols();

  Vector theta = init ? *init : anchor;
  if (theta.size() != k) throw DataError("init dim does not match features");

  double loss = PriorWeightedLogisticLoss(features, is_target, prior, l2,
                                          anchor, theta);
  for (int iter = 0; iter < kMaxIters; iter++) {
    Vector z = features * theta;
    Vector grad = 2.0 * l2 * (theta - anchor);
    Matrix hess = 2.0 * l2 * Matrix::Identity(k, k);
    for (Eigen::Index i = 0; i < z.size(); i++) {
      double zi = z[i] + w.logit_prior;
      double sig = Sigmoid(zi);
      double weight = is_target[i] ? w.target : w.nontarget;
      double gcoef = is_target[i] ? weight * (sig - 1.0) : weight * sig;
      grad.noalias() += gcoef * features.row(i).transpose();
      hess.noalias() += weight * sig * (1.0 - sig) *
                        features.row(i).transpose() * features.row(i);
    }
    if (grad.norm() <= kGradTol) return theta;

    Eigen::LDLT<Matrix> ldlt(hess);
    Vector step = ldlt.info() == Eigen::Success ? Vector(ldlt.solve(-grad))
                                                : Vector(-grad);
    if (!AllFinite(step) || grad.dot(step) >= 0.0) step = -grad;

    // Backtracking with the Armijo condition; the objective is convex, so a
    // step along a descent direction always succeeds for small enough alpha.
    double alpha = 1.0;
    double slope = grad.dot(step);
    bool moved = false;
    for (int bt = 0; bt < 60; bt++) {
      Vector cand = theta + alpha * step;
      double cand_loss = PriorWeightedLogisticLoss(features, is_target, prior,
                                                   l2, anchor, cand);
      if (cand_loss <= loss + 1e-4 * alpha * slope) {
        theta = std::move(cand);
        loss = cand_loss;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) {
      // Step size underflow: either converged to rounding or stuck.
      if (grad.norm() <= 1e-6)
        return theta;
      throw NumericalError("logistic fit: line search failed at gradient norm " +
                           std::to_string(grad.norm()));
    }
  }
  throw NumericalError("logistic fit did not reach gradient tolerance within " +
                       std::to_string(kMaxIters) + " iterations");
}

}  // namespace svkit
