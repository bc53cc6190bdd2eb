// core/src/plda.cc

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

#include "svkit/plda.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <thread>
#include <unordered_map>

#include "json_util.h"
#include "svkit/error.h"
#include "svkit/rng.h"

namespace svkit {

namespace {

constexpr double kCovFloorRel = 1e-8;
constexpr double kLog2Pi = 1.8378770664093453;  // log(2 pi)

struct SpeakerGroup {
  Vector sum;  // sum of (x - mu) over the speaker's segments
  int count = 0;
};

// Sufficient statistics that stay fixed across EM iterations.
struct PldaStats {
  int dim = 0;
  int num_segments = 0;
  Vector mu;                          // global segment mean
  std::vector<SpeakerGroup> speakers;
  Matrix total_scatter;    // sum over segments of (x-mu)(x-mu)^T
  Matrix within_scatter;   // sum over speakers of scatter about speaker mean
};

PldaStats AccumulateStats(const EmbeddingSet &data) {
  data.Validate();
  const int d = data.dim;
  const int n = static_cast<int>(data.items.size());

  std::unordered_map<std::string, int> index;
  std::vector<std::vector<const Embedding *>> groups;
  for (const Embedding &e : data.items) {
    if (!e.speaker)
      throw DataError("embedding '" + e.id + "' lacks a speaker label");
    auto [it, added] = index.emplace(*e.speaker, groups.size());
    if (added) groups.emplace_back();
    groups[it->second].push_back(&e);
  }
  if (groups.size() < 2)
    throw DataError("PLDA training needs at least 2 speakers, got " +
                    std::to_string(groups.size()));
  if (n <= d)
    SVKIT_WARN << "only " << n << " segments for dim " << d
               << "; covariance estimates will be weak";

  PldaStats stats;
  stats.dim = d;
  stats.num_segments = n;
  stats.mu = Vector::Zero(d);
  for (const Embedding &e : data.items) stats.mu += e.vector;
  stats.mu /= n;

  stats.total_scatter = Matrix::Zero(d, d);
  stats.within_scatter = Matrix::Zero(d, d);
  stats.speakers.reserve(groups.size());
  for (const auto &g : groups) {
    SpeakerGroup sg;
    sg.count = static_cast<int>(g.size());
    sg.sum = Vector::Zero(d);
    for (const Embedding *e : g) {
      Vector c = e->vector - stats.mu;
      sg.sum += c;
      stats.total_scatter.noalias() += c * c.transpose();
    }
    Vector mean = sg.sum / sg.count;
    for (const Embedding *e : g) {
      Vector c = e->vector - stats.mu - mean;
      stats.within_scatter.noalias() += c * c.transpose();
    }
    stats.speakers.push_back(std::move(sg));
  }
  stats.total_scatter = Symmetrize(stats.total_scatter);
  stats.within_scatter = Symmetrize(stats.within_scatter);
  return stats;
}

Matrix InverseSpd(const Matrix &a, const char *what) {
  Eigen::LLT<Matrix> llt(Symmetrize(a));
  if (llt.info() != Eigen::Success)
    throw NumericalError(std::string(what) + ": matrix not SPD");
  return llt.solve(Matrix::Identity(a.rows(), a.cols()));
}

// Observed-data log-likelihood of the current model.  Decomposed per
// speaker: the mean of n segments is N(mu, phi_b + phi_w/n) and the n-1
// within-speaker deviations are N(0, phi_w), so only the within scatter and
// the speaker sums are needed.
double ObservedLogLik(const PldaStats &stats, const Matrix &phi_b,
                      const Matrix &phi_w) {
  const int d = stats.dim;
  Matrix phi_w_inv = InverseSpd(phi_w, "ObservedLogLik(phi_w)");
  double logdet_w = LogDetSpd(phi_w);

  // Group speakers by segment count; the n-dependent matrices are shared.
  std::map<int, std::vector<const SpeakerGroup *>> by_count;
  for (const SpeakerGroup &s : stats.speakers) by_count[s.count].push_back(&s);

  double ll = 0.0;
  for (const auto &[n, members] : by_count) {
    Matrix mean_cov = Symmetrize(phi_w + double(n) * phi_b);
    Matrix mean_cov_inv = InverseSpd(mean_cov, "ObservedLogLik(mean_cov)");
    double logdet_mean = LogDetSpd(mean_cov);
    for (const SpeakerGroup *s : members) {
      Vector xbar = s->sum / n;
      ll += -0.5 * (n * d * kLog2Pi + logdet_mean + (n - 1) * logdet_w +
                    n * xbar.dot(mean_cov_inv * xbar));
    }
  }
  ll += -0.5 * (phi_w_inv * stats.within_scatter).trace();
  return ll;
}

}  // namespace

void PldaModel::Validate() const {
  const int d = Dim();
  if (d <= 0) throw DataError("PLDA model has empty mean");
  if (phi_b.rows() != d || phi_b.cols() != d || phi_w.rows() != d ||
      phi_w.cols() != d)
    throw DataError("PLDA model covariance dims do not match mean dim " +
                    std::to_string(d));
  if (!AllFinite(mu) || !AllFinite(phi_b) || !AllFinite(phi_w))
    throw DataError("PLDA model contains non-finite values");
  if (SymmetryGap(phi_b) != 0.0 || SymmetryGap(phi_w) != 0.0)
    throw DataError("PLDA model covariances are not exactly symmetric");
  SymEig eb = SymmetricEig(phi_b);
  SymEig ew = SymmetricEig(phi_w);
  double tol_b = 1e-10 * std::max(phi_b.trace(), 0.0) / d;
  if (eb.values.minCoeff() < -tol_b)
    throw DataError("phi_b is not positive semidefinite");
  if (ew.values.minCoeff() <= 0.0)
    throw DataError("phi_w is not positive definite");
}

PldaTrainResult TrainPlda(const EmbeddingSet &data,
                          const PldaTrainConfig &cfg) {
  if (cfg.max_iters < 1) throw DataError("max_iters must be >= 1");
  if (cfg.loglik_rel_tol <= 0.0) throw DataError("loglik_rel_tol must be > 0");
  PldaStats stats = AccumulateStats(data);
  const int d = stats.dim;
  const int n_total = stats.num_segments;
  const int n_speakers = static_cast<int>(stats.speakers.size());

  // Deterministic initialization from the class scatters.
  Matrix phi_w = stats.within_scatter / n_total;
  Matrix phi_b = Matrix::Zero(d, d);
  for (const SpeakerGroup &s : stats.speakers) {
    Vector mean = s.sum / s.count;
    phi_b.noalias() += mean * mean.transpose();
  }
  phi_b = Symmetrize(phi_b / n_speakers);
  if (phi_w.trace() <= 0.0) {
    // All-singleton or zero within-speaker scatter; start from a fraction of
    // the total scatter so the first inversion exists.
    phi_w = 0.1 * stats.total_scatter / n_total;
  }
  phi_w = FloorSpd(phi_w, kCovFloorRel);
  phi_b = FloorSpd(phi_b, kCovFloorRel);

  PldaTrainResult result;
  result.loglik_trace.reserve(cfg.max_iters);
  double prev_ll = -std::numeric_limits<double>::infinity();

  for (int iter = 0; iter < cfg.max_iters; iter++) {
    Matrix phi_b_inv = InverseSpd(phi_b, "TrainPlda(phi_b)");
    Matrix phi_w_inv = InverseSpd(phi_w, "TrainPlda(phi_w)");

    // E-step quantities depend on a speaker only through its segment count;
    // share them across speakers with equal counts.
    std::map<int, std::vector<const SpeakerGroup *>> by_count;
    for (const SpeakerGroup &s : stats.speakers)
      by_count[s.count].push_back(&s);

    Matrix phi_b_acc = Matrix::Zero(d, d);   // sum over speakers
    Matrix cross_acc = Matrix::Zero(d, d);   // sum over speakers of w s^T
    Matrix resid_acc = Matrix::Zero(d, d);   // sum of n (w w^T + C)
    for (const auto &[n, members] : by_count) {
      Matrix post_cov =
          InverseSpd(phi_b_inv + double(n) * phi_w_inv, "TrainPlda(post_cov)");
      Matrix projector = post_cov * phi_w_inv;  // w_s = projector * sum_s
      for (const SpeakerGroup *s : members) {
        Vector w = projector * s->sum;
        Matrix wwt = w * w.transpose();
        phi_b_acc.noalias() += post_cov + wwt;
        cross_acc.noalias() += w * s->sum.transpose();
        resid_acc.noalias() += double(n) * (wwt + post_cov);
      }
    }

    phi_b = Symmetrize(phi_b_acc / n_speakers);
    phi_w = Symmetrize((stats.total_scatter - cross_acc -
                        cross_acc.transpose() + resid_acc) /
                       n_total);
    phi_b = FloorSpd(phi_b, kCovFloorRel);
    phi_w = FloorSpd(phi_w, kCovFloorRel);

    double ll = ObservedLogLik(stats, phi_b, phi_w);
    result.loglik_trace.push_back(ll);
    if (iter > 0) {
      double rel = std::abs(ll - prev_ll) /
                   std::max(std::abs(prev_ll),
                            std::numeric_limits<double>::min());
      if (rel < cfg.loglik_rel_tol) break;
    }
    prev_ll = ll;
  }

  result.model.mu = stats.mu;
  result.model.phi_b = phi_b;
  result.model.phi_w = phi_w;
  result.model.Validate();
  return result;
}

PldaScorer::PldaScorer(const PldaModel &model) {
  model.Validate();
  mu_ = model.mu;
  Matrix phi = Symmetrize(model.phi_b + model.phi_w);
  Matrix phi_plus = Symmetrize(phi + model.phi_b);
  Matrix phi_inv = InverseSpd(phi, "PldaScorer(phi)");
  a_ = Symmetrize(InverseSpd(phi_plus, "PldaScorer(phi+phi_b)") - phi_inv);
  b_ = Symmetrize(InverseSpd(model.phi_w, "PldaScorer(phi_w)") - phi_inv);
  c_ = LogDetSpd(phi_plus) + LogDetSpd(model.phi_w) - 2.0 * LogDetSpd(phi);
}

double PldaScorer::Score(const Vector &enroll, const Vector &test) const {
  if (enroll.size() != mu_.size() || test.size() != mu_.size())
    throw DataError("trial vector dim does not match the PLDA model");
  if (!AllFinite(enroll) || !AllFinite(test))
    throw DataError("non-finite trial vector");
  // The rotation u = (e+t)/sqrt2, v = (e-t)/sqrt2 block-diagonalizes both
  // joint covariances, and v^T b v is even in the swap (e, t) -> (t, e), so
  // the score is symmetric by construction.
  Vector u = (enroll - mu_ + test - mu_) * M_SQRT1_2;
  Vector v = (enroll - test) * M_SQRT1_2;
  return -0.5 * (u.dot(a_ * u) + v.dot(b_ * v) + c_);
}

double ScoreLlr(const PldaModel &model, const Embedding &enroll,
                const Embedding &test) {
  return PldaScorer(model).Score(enroll.vector, test.vector);
}

TrialScores ScoreTrials(const PldaModel &model, const EmbeddingSet &enroll,
                        const EmbeddingSet &test, const TrialScores &trials,
                        int num_threads) {
  PldaScorer scorer(model);
  std::unordered_map<std::string, int> enroll_index, test_index;
  for (size_t i = 0; i < enroll.items.size(); i++)
    enroll_index.emplace(enroll.items[i].id, static_cast<int>(i));
  for (size_t i = 0; i < test.items.size(); i++)
    test_index.emplace(test.items[i].id, static_cast<int>(i));

  const size_t n = trials.records.size();
  std::vector<std::pair<int, int>> resolved(n);
  for (size_t i = 0; i < n; i++) {
    const TrialRecord &r = trials.records[i];
    int where = r.line > 0 ? r.line : static_cast<int>(i) + 1;
    auto ite = enroll_index.find(r.enroll_id);
    if (ite == enroll_index.end())
      throw DataError("unknown enroll id '" + r.enroll_id + "' at trial line " +
                      std::to_string(where));
    auto itt = test_index.find(r.test_id);
    if (itt == test_index.end())
      throw DataError("unknown test id '" + r.test_id + "' at trial line " +
                      std::to_string(where));
    resolved[i] = {ite->second, itt->second};
  }

  TrialScores out = trials;
  auto score_range = [&](size_t begin, size_t step) {
    for (size_t i = begin; i < n; i += step)
      out.records[i].score = scorer.Score(enroll.items[resolved[i].first].vector,
                                          test.items[resolved[i].second].vector);
  };
  if (num_threads <= 1) {
    score_range(0, 1);
  } else {
    // Each trial's score is a pure function written to its own slot, so the
    // strided split is bitwise identical to the serial pass.
    std::vector<std::thread> workers;
    workers.reserve(num_threads);
    for (int t = 0; t < num_threads; t++)
      workers.emplace_back(score_range, static_cast<size_t>(t),
                           static_cast<size_t>(num_threads));
    for (std::thread &w : workers) w.join();
  }
  return out;
}

EmbeddingSet SampleEmbeddings(const PldaModel &model, int n_speakers,
                              int n_per_speaker, uint64_t seed,
                              const std::optional<DomainTransform> &transform) {
  model.Validate();
  if (n_speakers < 1 || n_per_speaker < 1)
    throw DataError("sampling needs n_speakers >= 1 and n_per_speaker >= 1");
  const int d = model.Dim();
  if (transform) {
    if (transform->a.rows() != d || transform->a.cols() != d ||
        transform->shift.size() != d)
      throw DataError("domain transform dims do not match model dim " +
                      std::to_string(d));
  }
  Matrix root_b = SymmetricSqrt(model.phi_b);
  Matrix root_w = SymmetricSqrt(model.phi_w);

  Rng rng(seed);
  auto draw = [&](Vector &z) {
    for (int i = 0; i < d; i++) z[i] = rng.Gaussian();
  };

  EmbeddingSet set;
  set.dim = d;
  set.items.reserve(static_cast<size_t>(n_speakers) * n_per_speaker);
  Vector z(d);
  for (int s = 0; s < n_speakers; s++) {
    draw(z);
    Vector y = root_b * z;
    std::string speaker = "spk" + std::to_string(s);
    for (int j = 0; j < n_per_speaker; j++) {
      draw(z);
      Vector x = model.mu + y + root_w * z;
      if (transform) x = transform->a * x + transform->shift;
      Embedding e;
      e.id = speaker + "_seg" + std::to_string(j);
      e.speaker = speaker;
      e.vector = std::move(x);
      set.items.push_back(std::move(e));
    }
  }
  return set;
}

void SavePldaModel(const PldaModel &model, const std::string &path) {
  internal::Json j;
  j["version"] = 1;
  j["dim"] = model.Dim();
  j["mu"] = internal::VectorToJson(model.mu);
  j["phi_b"] = internal::MatrixToJson(model.phi_b);
  j["phi_w"] = internal::MatrixToJson(model.phi_w);
  if (model.provenance) {
    j["provenance"] = {{"method", model.provenance->method},
                       {"gamma", model.provenance->gamma},
                       {"beta", model.provenance->beta}};
  }
  internal::SaveJsonFile(j, path);
}

PldaModel LoadPldaModel(const std::string &path) {
  internal::Json j = internal::LoadJsonFile(path);
  auto dim = internal::Require(j, "dim", path).get<Eigen::Index>();
  if (dim <= 0) throw DataError("non-positive dim in " + path);
  PldaModel model;
  model.mu = internal::VectorFromJson(internal::Require(j, "mu", path), "mu");
  if (model.mu.size() != dim) throw DataError("mu length mismatch in " + path);
  model.phi_b =
      internal::MatrixFromJson(internal::Require(j, "phi_b", path), dim, dim, "phi_b");
  model.phi_w =
      internal::MatrixFromJson(internal::Require(j, "phi_w", path), dim, dim, "phi_w");
  if (auto it = j.find("provenance"); it != j.end()) {
    AdaptProvenance p;
    p.method = internal::Require(*it, "method", path).get<std::string>();
    p.gamma = internal::Require(*it, "gamma", path).get<double>();
    p.beta = internal::Require(*it, "beta", path).get<double>();
    model.provenance = std::move(p);
  }
  model.Validate();
  return model;
}

namespace {

constexpr char kPldmMagic[4] = {'P', 'L', 'D', 'M'};

void WriteF64Block(std::ostream &os, const double *data, size_t count) {
  os.write(reinterpret_cast<const char *>(data),
           static_cast<std::streamsize>(count * sizeof(double)));
}

void ReadF64Block(std::istream &is, double *data, size_t count,
                  const std::string &path) {
  is.read(reinterpret_cast<char *>(data),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!is) throw DataError("unexpected end of file in " + path);
}

}  // namespace

void SavePldaModelBinary(const PldaModel &model, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os.write(kPldmMagic, 4);
  uint8_t version = 1;
  os.write(reinterpret_cast<const char *>(&version), 1);
  uint32_t dim = static_cast<uint32_t>(model.Dim());
  os.write(reinterpret_cast<const char *>(&dim), 4);
  WriteF64Block(os, model.mu.data(), dim);
  // Eigen stores column-major; symmetric payloads make the layout moot, but
  // write row-major explicitly to match the documented schema.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rb =
      model.phi_b;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rw =
      model.phi_w;
  WriteF64Block(os, rb.data(), static_cast<size_t>(dim) * dim);
  WriteF64Block(os, rw.data(), static_cast<size_t>(dim) * dim);
  uint8_t has_prov = model.provenance ? 1 : 0;
  os.write(reinterpret_cast<const char *>(&has_prov), 1);
  if (model.provenance) {
    uint16_t len = static_cast<uint16_t>(model.provenance->method.size());
    os.write(reinterpret_cast<const char *>(&len), 2);
    os.write(model.provenance->method.data(), len);
    WriteF64Block(os, &model.provenance->gamma, 1);
    WriteF64Block(os, &model.provenance->beta, 1);
  }
  if (!os) throw DataError("I/O failure writing " + path);
}

PldaModel LoadPldaModelBinary(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kPldmMagic, 4) != 0)
    throw DataError("malformed header (bad magic) in " + path);
  uint8_t version = 0;
  is.read(reinterpret_cast<char *>(&version), 1);
  if (!is || version != 1)
    throw DataError("unsupported model file version in " + path);
  uint32_t dim = 0;
  is.read(reinterpret_cast<char *>(&dim), 4);
  if (!is || dim == 0) throw DataError("malformed header (dim) in " + path);

  PldaModel model;
  model.mu.resize(dim);
  ReadF64Block(is, model.mu.data(), dim, path);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rb(dim,
                                                                            dim),
      rw(dim, dim);
  ReadF64Block(is, rb.data(), static_cast<size_t>(dim) * dim, path);
  ReadF64Block(is, rw.data(), static_cast<size_t>(dim) * dim, path);
  model.phi_b = rb;
  model.phi_w = rw;
  uint8_t has_prov = 0;
  is.read(reinterpret_cast<char *>(&has_prov), 1);
  if (!is) throw DataError("unexpected end of file in " + path);
  if (has_prov) {
    uint16_t len = 0;
    is.read(reinterpret_cast<char *>(&len), 2);
    std::string method(len, '\0');
    is.read(method.data(), len);
    AdaptProvenance p;
    p.method = std::move(method);
    ReadF64Block(is, &p.gamma, 1, path);
    ReadF64Block(is, &p.beta, 1, path);
    if (!is) throw DataError("unexpected end of file in " + path);
    model.provenance = std::move(p);
  }
  model.Validate();
  return model;
}

}  // namespace svkit
