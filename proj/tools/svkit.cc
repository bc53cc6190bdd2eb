// tools/svkit.cc

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

// Batch front end for the back-end library.  Every command reads and writes
// files, is deterministic given its inputs and --seed, and drops a run
// manifest (content hashes of inputs and outputs plus the effective config)
// next to its primary output so runs can be audited byte for byte.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "svkit/calibration.h"
#include "svkit/coral.h"
#include "svkit/embedding.h"
#include "svkit/error.h"
#include "svkit/fusion.h"
#include "svkit/g711.h"
#include "svkit/metrics.h"
#include "svkit/plda.h"
#include "svkit/preprocess.h"
#include "svkit/repvgg.h"
#include "svkit/rng.h"
#include "svkit/synth.h"
#include "svkit/tensor.h"
#include "svkit/trials.h"
#include "svkit/wav.h"

#ifndef SVKIT_VERSION
#define SVKIT_VERSION "0.0.0"
#endif

namespace {

using svkit::DataError;
using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Run manifests

std::string HashFileContent(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot hash file: " + path);
  uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    for (std::streamsize i = 0; i < in.gcount(); i++) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  char out[32];
  std::snprintf(out, sizeof(out), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return out;
}

struct RunInfo {
  std::string command;
  OrderedJson config = OrderedJson::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string manifest_path;  // default: first output + ".manifest.json"
};

// No timestamps or host details: a rerun of the same command on the same
// inputs produces the same manifest bytes.
void WriteRunManifest(const RunInfo &info) {
  OrderedJson j;
  j["tool"] = "svkit";
  j["version"] = SVKIT_VERSION;
  j["command"] = info.command;
  j["config"] = info.config;
  OrderedJson in = OrderedJson::object();
  for (const std::string &p : info.inputs) in[p] = HashFileContent(p);
  j["inputs"] = in;
  OrderedJson out = OrderedJson::object();
  for (const std::string &p : info.outputs) out[p] = HashFileContent(p);
  j["outputs"] = out;

  std::string path = info.manifest_path;
  if (path.empty()) {
    if (info.outputs.empty()) throw DataError("run manifest has no outputs");
    path = info.outputs.front() + ".manifest.json";
  }
  std::ofstream os(path);
  if (!os) throw DataError("cannot write run manifest: " + path);
  os << j.dump(2) << "\n";
  if (!os) throw DataError("I/O failure writing " + path);
}

// ---------------------------------------------------------------------------
// Small shared helpers

svkit::EmbeddingFormat FormatForPath(const std::string &path) {
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".tsv") == 0)
    return svkit::EmbeddingFormat::kTsv;
  return svkit::EmbeddingFormat::kBinary;
}

svkit::EmbeddingSet LoadSet(const std::string &path) {
  return svkit::LoadEmbeddings(path, FormatForPath(path));
}

svkit::PldaModel LoadModelAuto(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.close();
  if (std::memcmp(magic, "PLDM", 4) == 0)
    return svkit::LoadPldaModelBinary(path);
  return svkit::LoadPldaModel(path);
}

void SaveModelByFormat(const svkit::PldaModel &model, const std::string &path,
                       const std::string &format) {
  if (format == "json") {
    svkit::SavePldaModel(model, path);
  } else if (format == "binary") {
    svkit::SavePldaModelBinary(model, path);
  } else {
    throw DataError("unknown model format '" + format +
                    "' (want json|binary)");
  }
}

svkit::TrialScores ScoreTrialsCosine(const svkit::EmbeddingSet &enroll,
                                     const svkit::EmbeddingSet &test,
                                     const svkit::TrialScores &trials) {
  std::unordered_map<std::string, const svkit::Embedding *> em, tm;
  for (const svkit::Embedding &e : enroll.items) em.emplace(e.id, &e);
  for (const svkit::Embedding &e : test.items) tm.emplace(e.id, &e);
  svkit::TrialScores out = trials;
  for (size_t i = 0; i < out.records.size(); i++) {
    svkit::TrialRecord &r = out.records[i];
    int line = r.line > 0 ? r.line : static_cast<int>(i) + 1;
    auto ite = em.find(r.enroll_id);
    if (ite == em.end())
      throw DataError("unknown enroll id '" + r.enroll_id + "' at trial line " +
                      std::to_string(line));
    auto itt = tm.find(r.test_id);
    if (itt == tm.end())
      throw DataError("unknown test id '" + r.test_id + "' at trial line " +
                      std::to_string(line));
    r.score = svkit::ScoreCosine(*ite->second, *itt->second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Config file: JSON object keyed by command (nested for two-word commands),
// each value an object of long-option defaults.  Values already given on the
// command line are left alone, so flags win.

bool HasFlagToken(const std::vector<std::string> &args,
                  const std::string &key) {
  std::string flag = "--" + key;
  std::string negated = "--no-" + key;
  for (const std::string &a : args) {
    if (a == flag || a == negated) return true;
    if (a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

std::vector<std::string> InjectConfigDefaults(std::vector<std::string> args) {
  std::string config_path;
  for (size_t i = 0; i < args.size(); i++) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw DataError("cannot open config file: " + config_path);
  Json cfg;
  try {
    in >> cfg;
  } catch (const Json::exception &e) {
    throw DataError("bad JSON in " + config_path + ": " + e.what());
  }
  if (!cfg.is_object())
    throw DataError("config root must be a JSON object: " + config_path);

  // Locate the (sub)command tokens; config flags are inserted right after.
  std::string cmd1, cmd2;
  size_t insert_at = 0;
  for (size_t i = 0; i < args.size(); i++) {
    if (args[i] == "--config") {
      i++;
      continue;
    }
    if (args[i].rfind("-", 0) == 0) continue;
    cmd1 = args[i];
    insert_at = i + 1;
    bool has_verbs =
        (cmd1 == "preprocess" || cmd1 == "calibrate" || cmd1 == "fuse");
    if (has_verbs && i + 1 < args.size() && args[i + 1].rfind("-", 0) != 0) {
      cmd2 = args[i + 1];
      insert_at = i + 2;
    }
    break;
  }
  if (cmd1.empty()) return args;

  const Json *section = nullptr;
  auto it = cfg.find(cmd1);
  if (it != cfg.end()) {
    if (cmd2.empty()) {
      section = &*it;
    } else if (it->is_object()) {
      auto it2 = it->find(cmd2);
      if (it2 != it->end()) section = &*it2;
    }
  }
  if (section == nullptr) return args;
  if (!section->is_object())
    throw DataError("config section for '" + cmd1 +
                    (cmd2.empty() ? "" : " " + cmd2) + "' must be an object");

  std::vector<std::string> extra;
  for (const auto &[key, value] : section->items()) {
    if (HasFlagToken(args, key)) continue;
    std::string flag = "--" + key;
    if (value.is_boolean()) {
      extra.push_back(value.get<bool>() ? flag : "--no-" + key);
    } else if (value.is_array()) {
      for (const auto &el : value)
        extra.push_back(flag + "=" +
                        (el.is_string() ? el.get<std::string>() : el.dump()));
    } else if (value.is_string()) {
      extra.push_back(flag + "=" + value.get<std::string>());
    } else {
      extra.push_back(flag + "=" + value.dump());
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at),
              extra.begin(), extra.end());
  return args;
}

// ---------------------------------------------------------------------------
// preprocess fit / apply

struct PreprocessFitOpts {
  std::string in, out, manifest;
  bool length_norm = true;
};

void RunPreprocessFit(const PreprocessFitOpts &o) {
  svkit::EmbeddingSet train = LoadSet(o.in);
  svkit::PreprocessChain chain = svkit::FitPreprocess(train, o.length_norm);
  svkit::SavePreprocess(chain, o.out);
  SVKIT_LOG << "fitted preprocess chain on " << train.items.size()
            << " embeddings of dim " << train.dim;
  RunInfo info;
  info.command = "preprocess fit";
  info.config = {{"in", o.in}, {"out", o.out}, {"length-norm", o.length_norm}};
  info.inputs = {o.in};
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

struct PreprocessApplyOpts {
  std::string chain, in, out, manifest;
};

void RunPreprocessApply(const PreprocessApplyOpts &o) {
  svkit::PreprocessChain chain = svkit::LoadPreprocess(o.chain);
  svkit::EmbeddingSet set = LoadSet(o.in);
  svkit::EmbeddingSet mapped = svkit::ApplyPreprocess(chain, set);
  svkit::SaveEmbeddings(mapped, o.out, FormatForPath(o.out));
  RunInfo info;
  info.command = "preprocess apply";
  info.config = {{"chain", o.chain}, {"in", o.in}, {"out", o.out}};
  info.inputs = {o.chain, o.in};
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// train-plda

struct TrainPldaOpts {
  std::string in, out, trace, manifest;
  std::string format = "json";
  int max_iters = 50;
  double tol = 1e-6;
};

void RunTrainPlda(const TrainPldaOpts &o) {
  svkit::EmbeddingSet train = LoadSet(o.in);
  svkit::PldaTrainConfig cfg;
  cfg.max_iters = o.max_iters;
  cfg.loglik_rel_tol = o.tol;
  svkit::PldaTrainResult result = svkit::TrainPlda(train, cfg);
  SaveModelByFormat(result.model, o.out, o.format);
  SVKIT_LOG << "trained PLDA dim " << result.model.Dim() << " in "
            << result.loglik_trace.size() << " iterations, final loglik "
            << result.loglik_trace.back();

  RunInfo info;
  info.command = "train-plda";
  info.config = {{"in", o.in},
                 {"out", o.out},
                 {"format", o.format},
                 {"max-iters", o.max_iters},
                 {"tol", o.tol}};
  info.inputs = {o.in};
  info.outputs = {o.out};
  if (!o.trace.empty()) {
    std::ofstream os(o.trace);
    if (!os) throw DataError("cannot write trace file: " + o.trace);
    char buf[40];
    for (size_t i = 0; i < result.loglik_trace.size(); i++) {
      std::snprintf(buf, sizeof(buf), "%.17g", result.loglik_trace[i]);
      os << i + 1 << '\t' << buf << '\n';
    }
    info.config["trace"] = o.trace;
    info.outputs.push_back(o.trace);
  }
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// adapt

struct AdaptOpts {
  std::string model, stats, out, ood_stats, manifest;
  std::string method = "coral+";
  std::string format = "json";
  double gamma = 0.5;
  double beta = 0.5;
  bool recenter = false;
};

void RunAdapt(const AdaptOpts &o) {
  svkit::PldaModel model = LoadModelAuto(o.model);
  model.Validate();
  svkit::EmbeddingSet ind_set = LoadSet(o.stats);
  svkit::DomainStats ind = svkit::EstimateDomainStats(ind_set);

  svkit::PldaModel adapted;
  if (o.method == "coral+") {
    svkit::CoralPlusConfig cfg;
    cfg.gamma = o.gamma;
    cfg.beta = o.beta;
    adapted = svkit::AdaptPldaCoralPlus(model, ind, cfg);
  } else if (o.method == "coral") {
    svkit::DomainStats ood;
    if (o.ood_stats.empty()) {
      ood.mean = model.mu;
      ood.total_cov = model.phi_b + model.phi_w;
      ood.count = 0;
    } else {
      ood = svkit::EstimateDomainStats(LoadSet(o.ood_stats));
    }
    adapted = svkit::AdaptPldaCoral(model, svkit::CoralTransform(ood, ind));
  } else {
    throw DataError("unknown adaptation method '" + o.method +
                    "' (want coral+|coral)");
  }
  if (o.recenter) adapted = svkit::RecenterModel(adapted, ind.mean);
  SaveModelByFormat(adapted, o.out, o.format);
  SVKIT_LOG << "adapted model with " << o.method << " on " << ind.count
            << " in-domain embeddings";

  RunInfo info;
  info.command = "adapt";
  info.config = {{"model", o.model},   {"stats", o.stats},
                 {"out", o.out},       {"method", o.method},
                 {"gamma", o.gamma},   {"beta", o.beta},
                 {"recenter", o.recenter}, {"format", o.format}};
  info.inputs = {o.model, o.stats};
  if (!o.ood_stats.empty()) {
    info.config["ood-stats"] = o.ood_stats;
    info.inputs.push_back(o.ood_stats);
  }
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// score

struct ScoreOpts {
  std::string model, enroll, test, trials, out, manifest;
  std::string backend = "plda";
  int threads = 1;
};

void RunScore(const ScoreOpts &o) {
  svkit::EmbeddingSet enroll = LoadSet(o.enroll);
  svkit::EmbeddingSet test = LoadSet(o.test);
  svkit::TrialScores trials = svkit::LoadTrialList(o.trials);

  svkit::TrialScores scored;
  if (o.backend == "plda") {
    if (o.model.empty())
      throw DataError("the plda backend needs --model");
    svkit::PldaModel model = LoadModelAuto(o.model);
    model.Validate();
    scored = svkit::ScoreTrials(model, enroll, test, trials, o.threads);
  } else if (o.backend == "cosine") {
    scored = ScoreTrialsCosine(enroll, test, trials);
  } else {
    throw DataError("unknown backend '" + o.backend + "' (want plda|cosine)");
  }
  svkit::SaveScoreFile(scored, o.out);
  SVKIT_LOG << "scored " << scored.records.size() << " trials with "
            << o.backend;

  RunInfo info;
  info.command = "score";
  info.config = {{"enroll", o.enroll}, {"test", o.test},
                 {"trials", o.trials}, {"out", o.out},
                 {"backend", o.backend}, {"threads", o.threads}};
  info.inputs = {o.enroll, o.test, o.trials};
  if (!o.model.empty()) {
    info.config["model"] = o.model;
    info.inputs.insert(info.inputs.begin(), o.model);
  }
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// calibrate train / apply

struct CalibrateTrainOpts {
  std::string scores, key, out, enroll, test, manifest;
  double prior = 0.01;
  double l2 = 1e-3;
  bool per_partition = false;
  bool qm = false;
  bool qm_log_duration = true;
  bool qm_embedding_norm = true;
};

void RunCalibrateTrain(const CalibrateTrainOpts &o) {
  svkit::TrialScores scores = svkit::LoadScoreFile(o.scores);
  svkit::TrialScores keys = svkit::LoadTrialList(o.key);
  svkit::TrialScores joined = svkit::JoinScoresWithKeys(scores, keys);

  svkit::QmConfig qm_cfg;
  qm_cfg.log_duration = o.qm_log_duration;
  qm_cfg.embedding_norm = o.qm_embedding_norm;
  if (o.qm) {
    if (!qm_cfg.log_duration && !qm_cfg.embedding_norm)
      throw DataError("--qm given with an empty quality-measure set");
    if (o.enroll.empty() || o.test.empty())
      throw DataError("--qm needs --enroll and --test embedding files");
    svkit::AttachQm(joined, LoadSet(o.enroll), LoadSet(o.test), qm_cfg);
  }

  svkit::CalibrationModel model =
      svkit::TrainCalibration(joined, o.per_partition, o.qm, o.prior, o.l2);
  model.qm_features = qm_cfg;
  svkit::SaveCalibration(model, o.out);
  SVKIT_LOG << "calibration scale " << model.global.scale << ", offset "
            << model.global.offset << ", " << model.partitions.size()
            << " partition model(s)";

  RunInfo info;
  info.command = "calibrate train";
  info.config = {{"scores", o.scores},
                 {"key", o.key},
                 {"out", o.out},
                 {"prior", o.prior},
                 {"l2", o.l2},
                 {"per-partition", o.per_partition},
                 {"qm", o.qm}};
  info.inputs = {o.scores, o.key};
  if (o.qm) {
    info.config["enroll"] = o.enroll;
    info.config["test"] = o.test;
    info.config["qm-log-duration"] = o.qm_log_duration;
    info.config["qm-embedding-norm"] = o.qm_embedding_norm;
    info.inputs.push_back(o.enroll);
    info.inputs.push_back(o.test);
  }
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

struct CalibrateApplyOpts {
  std::string scores, model, out, key, enroll, test, manifest;
};

void RunCalibrateApply(const CalibrateApplyOpts &o) {
  svkit::CalibrationModel model = svkit::LoadCalibration(o.model);
  svkit::TrialScores scores = svkit::LoadScoreFile(o.scores);
  if (!o.key.empty())
    scores = svkit::JoinScoresWithKeys(scores, svkit::LoadTrialList(o.key));
  else if (!model.partitions.empty())
    SVKIT_WARN << "partition calibration without --key: every trial uses the "
                  "global fallback";
  if (model.use_qm) {
    if (o.enroll.empty() || o.test.empty())
      throw DataError("this calibration model uses QM; pass --enroll/--test");
    svkit::AttachQm(scores, LoadSet(o.enroll), LoadSet(o.test),
                    model.qm_features);
  }
  svkit::TrialScores out = svkit::ApplyCalibration(model, scores);
  svkit::SaveScoreFile(out, o.out);

  RunInfo info;
  info.command = "calibrate apply";
  info.config = {{"scores", o.scores}, {"model", o.model}, {"out", o.out}};
  info.inputs = {o.scores, o.model};
  if (!o.key.empty()) {
    info.config["key"] = o.key;
    info.inputs.push_back(o.key);
  }
  if (model.use_qm) {
    info.config["enroll"] = o.enroll;
    info.config["test"] = o.test;
    info.inputs.push_back(o.enroll);
    info.inputs.push_back(o.test);
  }
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// fuse train / apply

struct FuseTrainOpts {
  std::vector<std::string> scores;
  std::string key, out, manifest;
  double prior = 0.01;
  double l2 = 1e-3;
};

void RunFuseTrain(const FuseTrainOpts &o) {
  svkit::TrialScores keys = svkit::LoadTrialList(o.key);
  std::vector<svkit::TrialScores> systems;
  for (const std::string &path : o.scores)
    systems.push_back(
        svkit::JoinScoresWithKeys(svkit::LoadScoreFile(path), keys));
  svkit::FusionModel model = svkit::TrainFusion(systems, o.prior, o.l2);
  svkit::SaveFusion(model, o.out);
  {
    auto log = SVKIT_LOG;
    log << "fusion weights";
    for (double w : model.weights) log << ' ' << w;
    log << ", offset " << model.offset;
  }

  RunInfo info;
  info.command = "fuse train";
  info.config = {{"scores", o.scores},
                 {"key", o.key},
                 {"out", o.out},
                 {"prior", o.prior},
                 {"l2", o.l2}};
  info.inputs = o.scores;
  info.inputs.push_back(o.key);
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

struct FuseApplyOpts {
  std::vector<std::string> scores;
  std::string model, out, manifest;
};

void RunFuseApply(const FuseApplyOpts &o) {
  svkit::FusionModel model = svkit::LoadFusion(o.model);
  std::vector<svkit::TrialScores> systems;
  for (const std::string &path : o.scores)
    systems.push_back(svkit::LoadScoreFile(path));
  svkit::TrialScores out = svkit::ApplyFusion(model, systems);
  svkit::SaveScoreFile(out, o.out);

  RunInfo info;
  info.command = "fuse apply";
  info.config = {{"scores", o.scores}, {"model", o.model}, {"out", o.out}};
  info.inputs = o.scores;
  info.inputs.push_back(o.model);
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// evaluate

OrderedJson MetricsBlock(const svkit::TrialScores &scores,
                         const svkit::CostParams &params) {
  OrderedJson b;
  b["num_targets"] = scores.NumTargets();
  b["num_nontargets"] = scores.NumNontargets();
  b["eer"] = svkit::ComputeEer(scores);
  svkit::CostResult min_cp = svkit::ComputeMinCost(scores, params);
  svkit::CostResult act_cp = svkit::ComputeActCost(scores, params);
  b["min_cp"] = {{"mean", min_cp.mean}, {"per_prior", min_cp.per_prior}};
  b["act_cp"] = {{"mean", act_cp.mean}, {"per_prior", act_cp.per_prior}};
  return b;
}

void PrintMetrics(const std::string &label, const OrderedJson &b) {
  std::printf("%-12s  targets %llu  nontargets %llu  eer %.4f%%  min_cp %.4f"
              "  act_cp %.4f\n",
              label.c_str(),
              static_cast<unsigned long long>(b["num_targets"].get<size_t>()),
              static_cast<unsigned long long>(
                  b["num_nontargets"].get<size_t>()),
              100.0 * b["eer"].get<double>(),
              b["min_cp"]["mean"].get<double>(),
              b["act_cp"]["mean"].get<double>());
}

struct EvaluateOpts {
  std::string scores, key, out, det, manifest;
  std::vector<double> priors = {0.01, 0.005};
  double c_miss = 1.0;
  double c_fa = 1.0;
  bool by_partition = false;
};

void RunEvaluate(const EvaluateOpts &o) {
  svkit::CostParams params;
  params.target_priors = o.priors;
  params.c_miss = o.c_miss;
  params.c_fa = o.c_fa;
  params.Validate();

  svkit::TrialScores scores = svkit::JoinScoresWithKeys(
      svkit::LoadScoreFile(o.scores), svkit::LoadTrialList(o.key));

  OrderedJson report;
  report["priors"] = o.priors;
  report["c_miss"] = o.c_miss;
  report["c_fa"] = o.c_fa;
  report["overall"] = MetricsBlock(scores, params);
  PrintMetrics("overall", report["overall"]);

  if (o.by_partition) {
    OrderedJson parts = OrderedJson::object();
    for (const auto &[name, sub] : svkit::SplitByPartition(scores)) {
      if (sub.NumTargets() == 0 || sub.NumNontargets() == 0) {
        SVKIT_WARN << "partition '" << name
                   << "' lacks a class and is not reported";
        continue;
      }
      parts[name] = MetricsBlock(sub, params);
      PrintMetrics(name.empty() ? "(none)" : name, parts[name]);
    }
    report["partitions"] = parts;
  }

  {
    std::ofstream os(o.out);
    if (!os) throw DataError("cannot write report: " + o.out);
    os << report.dump(2) << "\n";
    if (!os) throw DataError("I/O failure writing " + o.out);
  }

  RunInfo info;
  info.command = "evaluate";
  info.config = {{"scores", o.scores}, {"key", o.key},
                 {"out", o.out},       {"priors", o.priors},
                 {"c-miss", o.c_miss}, {"c-fa", o.c_fa},
                 {"by-partition", o.by_partition}};
  info.inputs = {o.scores, o.key};
  info.outputs = {o.out};
  if (!o.det.empty()) {
    svkit::DetCurve det = svkit::ComputeDetCurve(scores);
    std::ofstream os(o.det);
    if (!os) throw DataError("cannot write DET file: " + o.det);
    os << "#threshold\tp_miss\tp_fa\n";
    char buf[128];
    for (const svkit::DetPoint &p : det.points) {
      std::snprintf(buf, sizeof(buf), "%.17g\t%.17g\t%.17g\n", p.threshold,
                    p.p_miss, p.p_fa);
      os << buf;
    }
    if (!os) throw DataError("I/O failure writing " + o.det);
    info.config["det"] = o.det;
    info.outputs.push_back(o.det);
  }
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// fuse-repvgg

svkit::Tensor4<float> ToTensor4(const svkit::TensorData &t,
                                const std::string &path) {
  if (t.dims.size() != 4)
    throw DataError("kernel tensor must be rank 4: " + path);
  svkit::Tensor4<float> out(static_cast<int>(t.dims[0]),
                            static_cast<int>(t.dims[1]),
                            static_cast<int>(t.dims[2]),
                            static_cast<int>(t.dims[3]));
  out.data = t.data;
  return out;
}

svkit::ConvBranch<float> BranchFromJson(const Json &j, bool identity,
                                        const std::string &name,
                                        const std::filesystem::path &base,
                                        std::vector<std::string> *inputs) {
  if (!j.is_object())
    throw DataError("block manifest branch '" + name + "' must be an object");
  svkit::ConvBranch<float> b;
  b.is_identity = identity;
  if (!identity) {
    auto it = j.find("kernel");
    if (it == j.end())
      throw DataError("block manifest branch '" + name + "' lacks 'kernel'");
    std::filesystem::path p(it->get<std::string>());
    if (p.is_relative()) p = base / p;
    inputs->push_back(p.string());
    b.kernel = ToTensor4(svkit::LoadTensor(p.string()), p.string());
  }
  auto vec = [&](const char *field) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_array())
      throw DataError("block manifest branch '" + name + "' lacks array '" +
                      field + "'");
    std::vector<float> v;
    for (const auto &x : *it) v.push_back(x.get<float>());
    return v;
  };
  b.bn_mean = vec("bn_mean");
  b.bn_std = vec("bn_std");
  b.bn_scale = vec("bn_scale");
  b.bn_bias = vec("bn_bias");
  return b;
}

struct FuseRepvggOpts {
  std::string manifest_file, out_kernel, out_bias, manifest;
  int probe_batch = 2;
  int probe_size = 8;
  uint64_t seed = 7;
};

void RunFuseRepvgg(const FuseRepvggOpts &o) {
  std::ifstream in(o.manifest_file);
  if (!in) throw DataError("cannot open block manifest: " + o.manifest_file);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception &e) {
    throw DataError("bad JSON in " + o.manifest_file + ": " + e.what());
  }
  std::filesystem::path base =
      std::filesystem::path(o.manifest_file).parent_path();

  std::vector<std::string> inputs = {o.manifest_file};
  svkit::RepVggBlock<float> block;
  auto it3 = j.find("branch3");
  if (it3 == j.end())
    throw DataError("block manifest lacks the required 'branch3'");
  block.branch3 = BranchFromJson(*it3, false, "branch3", base, &inputs);
  if (auto it1 = j.find("branch1"); it1 != j.end())
    block.branch1 = BranchFromJson(*it1, false, "branch1", base, &inputs);
  if (auto it0 = j.find("identity"); it0 != j.end())
    block.branch0 = BranchFromJson(*it0, true, "identity", base, &inputs);

  svkit::FusedConv<float> fused = svkit::FuseRepVggBlock(block);

  if (o.probe_batch < 1 || o.probe_size < 1)
    throw DataError("probe dimensions must be positive");
  svkit::Rng rng(o.seed);
  svkit::Tensor4<float> probe(o.probe_batch, block.branch3.kernel.d1,
                              o.probe_size, o.probe_size);
  for (float &x : probe.data) x = static_cast<float>(rng.Gaussian());
  svkit::Tensor4<float> ref = svkit::BlockForward(block, probe);
  svkit::Tensor4<float> got =
      svkit::Conv2dForward(probe, fused.kernel, fused.bias);
  float residual = 0.0f;
  for (size_t i = 0; i < ref.data.size(); i++)
    residual = std::max(residual, std::abs(ref.data[i] - got.data[i]));
  std::printf("max abs fusion residual on probe: %.9g\n",
              static_cast<double>(residual));

  svkit::TensorData kernel_out;
  kernel_out.dims = {static_cast<uint32_t>(fused.kernel.d0),
                     static_cast<uint32_t>(fused.kernel.d1),
                     static_cast<uint32_t>(fused.kernel.d2),
                     static_cast<uint32_t>(fused.kernel.d3)};
  kernel_out.data = fused.kernel.data;
  svkit::SaveTensor(kernel_out, o.out_kernel);
  svkit::TensorData bias_out;
  bias_out.dims = {static_cast<uint32_t>(fused.bias.size())};
  bias_out.data = fused.bias;
  svkit::SaveTensor(bias_out, o.out_bias);

  RunInfo info;
  info.command = "fuse-repvgg";
  info.config = {{"manifest", o.manifest_file},
                 {"out-kernel", o.out_kernel},
                 {"out-bias", o.out_bias},
                 {"probe-batch", o.probe_batch},
                 {"probe-size", o.probe_size},
                 {"seed", o.seed}};
  info.inputs = inputs;
  info.outputs = {o.out_kernel, o.out_bias};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// transcode

struct TranscodeOpts {
  std::string in, out, manifest;
  std::string codec = "alaw";
  bool raw = false;
  int rate = 8000;
};

void RunTranscode(const TranscodeOpts &o) {
  if (o.codec != "alaw")
    throw DataError("unknown codec '" + o.codec + "' (want alaw)");
  svkit::PcmBuffer pcm =
      o.raw ? svkit::ReadRawPcm(o.in, o.rate) : svkit::ReadWav(o.in);
  svkit::PcmBuffer out = svkit::TranscodeAlaw(pcm);
  if (o.raw)
    svkit::WriteRawPcm(out, o.out);
  else
    svkit::WriteWav(out, o.out);
  SVKIT_LOG << "transcoded " << out.samples.size() << " samples at "
            << out.sample_rate_hz << " Hz";

  RunInfo info;
  info.command = "transcode";
  info.config = {{"in", o.in},
                 {"out", o.out},
                 {"codec", o.codec},
                 {"raw", o.raw},
                 {"rate", o.rate}};
  info.inputs = {o.in};
  info.outputs = {o.out};
  info.manifest_path = o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  std::string out_dir, manifest;
  svkit::ScenarioConfig cfg;
};

void RunSynth(const SynthOpts &o) {
  svkit::Scenario sc = svkit::MakeScenario(o.cfg);
  std::filesystem::create_directories(o.out_dir);
  auto path = [&](const char *name) { return o.out_dir + "/" + name; };

  svkit::SaveEmbeddings(sc.ood_train, path("ood_train.svec"),
                        svkit::EmbeddingFormat::kBinary);
  svkit::SaveEmbeddings(sc.ind_stats, path("ind_stats.svec"),
                        svkit::EmbeddingFormat::kBinary);
  svkit::SaveEmbeddings(sc.enroll, path("enroll.svec"),
                        svkit::EmbeddingFormat::kBinary);
  svkit::SaveEmbeddings(sc.test, path("test.svec"),
                        svkit::EmbeddingFormat::kBinary);
  svkit::SaveTrialList(sc.trials, path("key.tsv"));
  svkit::SavePldaModel(sc.ood_model, path("ood_truth.json"));
  svkit::SavePldaModel(sc.ind_model, path("ind_truth.json"));
  SVKIT_LOG << "synthesized " << sc.ood_train.items.size()
            << " ood training, " << sc.ind_stats.items.size()
            << " in-domain stat embeddings and " << sc.trials.records.size()
            << " trials";

  RunInfo info;
  info.command = "synth";
  info.config = {{"out-dir", o.out_dir},
                 {"seed", o.cfg.seed},
                 {"dim", o.cfg.dim},
                 {"ood-speakers", o.cfg.ood_speakers},
                 {"ood-segs", o.cfg.ood_segs_per_speaker},
                 {"ind-speakers", o.cfg.ind_stat_speakers},
                 {"ind-segs", o.cfg.ind_stat_segs_per_speaker},
                 {"trial-speakers", o.cfg.trial_speakers},
                 {"test-segs", o.cfg.test_segs_per_speaker},
                 {"nontargets-per-test", o.cfg.nontargets_per_test},
                 {"between-scale", o.cfg.between_scale},
                 {"within-scale", o.cfg.within_scale},
                 {"shift-lo", o.cfg.shift_scale_lo},
                 {"shift-hi", o.cfg.shift_scale_hi},
                 {"mean-shift", o.cfg.mean_shift_scale},
                 {"duration-lo", o.cfg.duration_lo_s},
                 {"duration-hi", o.cfg.duration_hi_s},
                 {"partitions", o.cfg.num_partitions}};
  info.outputs = {path("ood_train.svec"), path("ind_stats.svec"),
                  path("enroll.svec"),    path("test.svec"),
                  path("key.tsv"),        path("ood_truth.json"),
                  path("ind_truth.json")};
  info.manifest_path =
      o.manifest.empty() ? path("run.manifest.json") : o.manifest;
  WriteRunManifest(info);
}

// ---------------------------------------------------------------------------
// wiring

void AddManifestOption(CLI::App *cmd, std::string *slot) {
  cmd->add_option("--manifest", *slot,
                  "Run-manifest path (default: <first output>.manifest.json)");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Speaker-verification back-end toolkit"};
  app.set_version_flag("--version", SVKIT_VERSION);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file of per-command option defaults; explicit "
                 "command-line flags win");

  // preprocess
  CLI::App *preprocess =
      app.add_subcommand("preprocess", "Center/whiten/length-norm embeddings");
  preprocess->require_subcommand(1);
  auto pf = std::make_shared<PreprocessFitOpts>();
  CLI::App *pfit = preprocess->add_subcommand("fit", "Fit a preprocess chain");
  pfit->add_option("--in", pf->in, "Training embeddings (.svec or .tsv)")
      ->required();
  pfit->add_option("--out", pf->out, "Output chain JSON")->required();
  pfit->add_flag("--length-norm,!--no-length-norm", pf->length_norm,
                 "Length-normalize after whitening (default on)");
  AddManifestOption(pfit, &pf->manifest);
  pfit->callback([pf] { RunPreprocessFit(*pf); });

  auto pa = std::make_shared<PreprocessApplyOpts>();
  CLI::App *papply =
      preprocess->add_subcommand("apply", "Apply a fitted chain");
  papply->add_option("--chain", pa->chain, "Chain JSON from 'preprocess fit'")
      ->required();
  papply->add_option("--in", pa->in, "Input embeddings")->required();
  papply->add_option("--out", pa->out, "Output embeddings")->required();
  AddManifestOption(papply, &pa->manifest);
  papply->callback([pa] { RunPreprocessApply(*pa); });

  // train-plda
  auto tp = std::make_shared<TrainPldaOpts>();
  CLI::App *train =
      app.add_subcommand("train-plda", "EM-train a two-covariance model");
  train->add_option("--in", tp->in, "Speaker-labeled embeddings")->required();
  train->add_option("--out", tp->out, "Output model file")->required();
  train->add_option("--format", tp->format, "Model format: json|binary");
  train->add_option("--max-iters", tp->max_iters, "EM iteration cap")
      ->check(CLI::PositiveNumber);
  train->add_option("--tol", tp->tol, "Relative log-likelihood stop tolerance");
  train->add_option("--trace", tp->trace,
                    "Optional TSV of per-iteration log-likelihood");
  AddManifestOption(train, &tp->manifest);
  train->callback([tp] { RunTrainPlda(*tp); });

  // adapt
  auto ad = std::make_shared<AdaptOpts>();
  CLI::App *adapt =
      app.add_subcommand("adapt", "Adapt a model to unlabeled in-domain data");
  adapt->add_option("--model", ad->model, "Input model file")->required();
  adapt->add_option("--stats", ad->stats, "In-domain embeddings")->required();
  adapt->add_option("--out", ad->out, "Output model file")->required();
  adapt->add_option("--method", ad->method, "coral+|coral (default coral+)");
  adapt->add_option("--gamma", ad->gamma,
                    "Between-class adaptation weight (coral+)");
  adapt->add_option("--beta", ad->beta,
                    "Within-class adaptation weight (coral+)");
  adapt->add_option("--ood-stats", ad->ood_stats,
                    "Out-of-domain embeddings for plain coral (default: the "
                    "model's total covariance)");
  adapt->add_flag("--recenter,!--no-recenter", ad->recenter,
                  "Also move the model mean to the in-domain mean "
                  "(default off)");
  adapt->add_option("--format", ad->format, "Model format: json|binary");
  AddManifestOption(adapt, &ad->manifest);
  adapt->callback([ad] { RunAdapt(*ad); });

  // score
  auto so = std::make_shared<ScoreOpts>();
  CLI::App *score = app.add_subcommand("score", "Score a trial list");
  score->add_option("--model", so->model, "Model file (plda backend)");
  score->add_option("--enroll", so->enroll, "Enrollment embeddings")
      ->required();
  score->add_option("--test", so->test, "Test embeddings")->required();
  score->add_option("--trials", so->trials, "Trial list TSV")->required();
  score->add_option("--out", so->out, "Output score TSV")->required();
  score->add_option("--backend", so->backend, "plda|cosine (default plda)");
  score->add_option("--threads", so->threads, "Scoring threads")
      ->check(CLI::PositiveNumber);
  AddManifestOption(score, &so->manifest);
  score->callback([so] { RunScore(*so); });

  // calibrate
  CLI::App *calibrate =
      app.add_subcommand("calibrate", "Score-to-LLR calibration");
  calibrate->require_subcommand(1);
  auto ct = std::make_shared<CalibrateTrainOpts>();
  CLI::App *ctrain =
      calibrate->add_subcommand("train", "Fit a calibration model");
  ctrain->add_option("--scores", ct->scores, "Score TSV")->required();
  ctrain->add_option("--key", ct->key, "Key TSV")->required();
  ctrain->add_option("--out", ct->out, "Output calibration JSON")->required();
  ctrain->add_option("--prior", ct->prior, "Effective target prior")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  ctrain->add_option("--l2", ct->l2, "L2 pull toward the identity transform")
      ->check(CLI::NonNegativeNumber);
  ctrain->add_flag("--per-partition", ct->per_partition,
                   "Fit extra per-partition parameters");
  ctrain->add_flag("--qm", ct->qm, "Add quality-measure features");
  ctrain->add_option("--enroll", ct->enroll,
                     "Enrollment embeddings (QM source)");
  ctrain->add_option("--test", ct->test, "Test embeddings (QM source)");
  ctrain->add_flag("--qm-log-duration,!--no-qm-log-duration",
                   ct->qm_log_duration,
                   "Include log segment durations (default on)");
  ctrain->add_flag("--qm-embedding-norm,!--no-qm-embedding-norm",
                   ct->qm_embedding_norm,
                   "Include embedding norms (default on)");
  AddManifestOption(ctrain, &ct->manifest);
  ctrain->callback([ct] { RunCalibrateTrain(*ct); });

  auto ca = std::make_shared<CalibrateApplyOpts>();
  CLI::App *capply =
      calibrate->add_subcommand("apply", "Apply a calibration model");
  capply->add_option("--scores", ca->scores, "Score TSV")->required();
  capply->add_option("--model", ca->model, "Calibration JSON")->required();
  capply->add_option("--out", ca->out, "Output score TSV")->required();
  capply->add_option("--key", ca->key,
                     "Key/trial TSV carrying partition labels");
  capply->add_option("--enroll", ca->enroll,
                     "Enrollment embeddings (QM source)");
  capply->add_option("--test", ca->test, "Test embeddings (QM source)");
  AddManifestOption(capply, &ca->manifest);
  capply->callback([ca] { RunCalibrateApply(*ca); });

  // fuse
  CLI::App *fuse = app.add_subcommand("fuse", "Linear score fusion");
  fuse->require_subcommand(1);
  auto ft = std::make_shared<FuseTrainOpts>();
  CLI::App *ftrain = fuse->add_subcommand("train", "Fit fusion weights");
  ftrain->add_option("--scores", ft->scores,
                     "Score TSV per system (repeat in system order)")
      ->required();
  ftrain->add_option("--key", ft->key, "Key TSV")->required();
  ftrain->add_option("--out", ft->out, "Output fusion JSON")->required();
  ftrain->add_option("--prior", ft->prior, "Effective target prior")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  ftrain->add_option("--l2", ft->l2, "L2 pull toward uniform weights")
      ->check(CLI::NonNegativeNumber);
  AddManifestOption(ftrain, &ft->manifest);
  ftrain->callback([ft] { RunFuseTrain(*ft); });

  auto fa = std::make_shared<FuseApplyOpts>();
  CLI::App *fapply = fuse->add_subcommand("apply", "Apply fusion weights");
  fapply->add_option("--scores", fa->scores,
                     "Score TSV per system (same order as training)")
      ->required();
  fapply->add_option("--model", fa->model, "Fusion JSON")->required();
  fapply->add_option("--out", fa->out, "Output score TSV")->required();
  AddManifestOption(fapply, &fa->manifest);
  fapply->callback([fa] { RunFuseApply(*fa); });

  // evaluate
  auto ev = std::make_shared<EvaluateOpts>();
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "EER and detection-cost report");
  evaluate->add_option("--scores", ev->scores, "Score TSV")->required();
  evaluate->add_option("--key", ev->key, "Key TSV")->required();
  evaluate->add_option("--out", ev->out, "Report JSON")->required();
  evaluate->add_option("--det", ev->det, "Optional DET points TSV");
  evaluate->add_option("--priors", ev->priors,
                       "Target priors (default 0.01 0.005)");
  evaluate->add_option("--c-miss", ev->c_miss, "Miss cost");
  evaluate->add_option("--c-fa", ev->c_fa, "False-alarm cost");
  evaluate->add_flag("--by-partition", ev->by_partition,
                     "Also report per partition");
  AddManifestOption(evaluate, &ev->manifest);
  evaluate->callback([ev] { RunEvaluate(*ev); });

  // fuse-repvgg
  auto fr = std::make_shared<FuseRepvggOpts>();
  CLI::App *fuse_repvgg = app.add_subcommand(
      "fuse-repvgg", "Re-parameterize a conv block into one 3x3 conv");
  fuse_repvgg->add_option("--manifest-in", fr->manifest_file,
                          "Block manifest JSON")
      ->required();
  fuse_repvgg->add_option("--out-kernel", fr->out_kernel,
                          "Fused kernel tensor")
      ->required();
  fuse_repvgg->add_option("--out-bias", fr->out_bias, "Fused bias tensor")
      ->required();
  fuse_repvgg->add_option("--probe-batch", fr->probe_batch,
                          "Probe batch size")
      ->check(CLI::PositiveNumber);
  fuse_repvgg->add_option("--probe-size", fr->probe_size,
                          "Probe spatial size")
      ->check(CLI::PositiveNumber);
  fuse_repvgg->add_option("--seed", fr->seed, "Probe seed");
  AddManifestOption(fuse_repvgg, &fr->manifest);
  fuse_repvgg->callback([fr] { RunFuseRepvgg(*fr); });

  // transcode
  auto tc = std::make_shared<TranscodeOpts>();
  CLI::App *transcode =
      app.add_subcommand("transcode", "Push audio through a telephony codec");
  transcode->add_option("--in", tc->in, "Input wav (or raw pcm with --raw)")
      ->required();
  transcode->add_option("--out", tc->out, "Output wav (or raw pcm)")
      ->required();
  transcode->add_option("--codec", tc->codec, "Codec (alaw)");
  transcode->add_flag("--raw", tc->raw, "Headerless little-endian int16 I/O");
  transcode->add_option("--rate", tc->rate, "Sample rate for --raw input")
      ->check(CLI::PositiveNumber);
  AddManifestOption(transcode, &tc->manifest);
  transcode->callback([tc] { RunTranscode(*tc); });

  // synth
  auto sy = std::make_shared<SynthOpts>();
  CLI::App *synth = app.add_subcommand(
      "synth", "Generate a seeded synthetic domain-shift experiment");
  synth->add_option("--out-dir", sy->out_dir, "Output directory")->required();
  synth->add_option("--seed", sy->cfg.seed, "Scenario seed");
  synth->add_option("--dim", sy->cfg.dim, "Embedding dimension")
      ->check(CLI::PositiveNumber);
  synth->add_option("--ood-speakers", sy->cfg.ood_speakers,
                    "Out-of-domain training speakers");
  synth->add_option("--ood-segs", sy->cfg.ood_segs_per_speaker,
                    "Segments per ood speaker");
  synth->add_option("--ind-speakers", sy->cfg.ind_stat_speakers,
                    "In-domain stat speakers");
  synth->add_option("--ind-segs", sy->cfg.ind_stat_segs_per_speaker,
                    "Segments per in-domain stat speaker");
  synth->add_option("--trial-speakers", sy->cfg.trial_speakers,
                    "Trial-side speakers");
  synth->add_option("--test-segs", sy->cfg.test_segs_per_speaker,
                    "Test segments per trial speaker");
  synth->add_option("--nontargets-per-test", sy->cfg.nontargets_per_test,
                    "Impostor enrollments per test segment");
  synth->add_option("--between-scale", sy->cfg.between_scale,
                    "Between-class covariance scale");
  synth->add_option("--within-scale", sy->cfg.within_scale,
                    "Within-class covariance scale");
  synth->add_option("--shift-lo", sy->cfg.shift_scale_lo,
                    "Domain-shift eigenvalue range, low end");
  synth->add_option("--shift-hi", sy->cfg.shift_scale_hi,
                    "Domain-shift eigenvalue range, high end");
  synth->add_option("--mean-shift", sy->cfg.mean_shift_scale,
                    "Domain mean-shift scale");
  synth->add_option("--duration-lo", sy->cfg.duration_lo_s,
                    "Shortest segment duration, seconds");
  synth->add_option("--duration-hi", sy->cfg.duration_hi_s,
                    "Longest segment duration, seconds");
  synth->add_option("--partitions", sy->cfg.num_partitions,
                    "Partition label count (0 disables)");
  AddManifestOption(synth, &sy->manifest);
  synth->callback([sy] { RunSynth(*sy); });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = InjectConfigDefaults(args);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  } catch (const DataError &e) {
    std::cerr << "ERROR (svkit): " << e.what() << std::endl;
    return 2;
  } catch (const svkit::NumericalError &e) {
    std::cerr << "ERROR (svkit): numerical failure: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "ERROR (svkit): " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
