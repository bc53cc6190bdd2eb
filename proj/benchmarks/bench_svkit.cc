// benchmarks/bench_svkit.cc

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

// Hot-path benchmarks: trial scoring, the threshold sweep, the conv forward
// used by the re-parameterization check, and the a-law codec.

#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "svkit/g711.h"
#include "svkit/metrics.h"
#include "svkit/plda.h"
#include "svkit/repvgg.h"
#include "svkit/rng.h"
#include "svkit/synth.h"
#include "svkit/trials.h"

namespace {

svkit::TrialScores RandomScores(size_t n_targets, size_t n_nontargets,
                                uint64_t seed) {
  svkit::Rng rng(seed);
  svkit::TrialScores s;
  s.records.reserve(n_targets + n_nontargets);
  for (size_t i = 0; i < n_targets; i++) {
    svkit::TrialRecord r;
    r.enroll_id = "e" + std::to_string(i);
    r.test_id = "t" + std::to_string(i);
    r.score = 1.0 + rng.Gaussian();
    r.key = svkit::TrialKey::kTarget;
    s.records.push_back(r);
  }
  for (size_t i = 0; i < n_nontargets; i++) {
    svkit::TrialRecord r;
    r.enroll_id = "e" + std::to_string(i);
    r.test_id = "x" + std::to_string(i);
    r.score = -1.0 + rng.Gaussian();
    r.key = svkit::TrialKey::kNontarget;
    s.records.push_back(r);
  }
  return s;
}

void BM_PldaScoreTrials(benchmark::State &state) {
  const int dim = 128;
  svkit::Rng rng(11);
  svkit::PldaModel model = svkit::RandomPldaModel(dim, 1.0, 1.0, &rng);
  svkit::EmbeddingSet enroll =
      svkit::SampleEmbeddings(model, 64, 1, 12, std::nullopt);
  svkit::EmbeddingSet test = svkit::SampleEmbeddings(model, 64, 4, 13, std::nullopt);
  svkit::TrialScores trials;
  for (const svkit::Embedding &e : enroll.items)
    for (const svkit::Embedding &t : test.items) {
      svkit::TrialRecord r;
      r.enroll_id = e.id;
      r.test_id = t.id;
      trials.records.push_back(r);
    }
  for (auto _ : state) {
    svkit::TrialScores out =
        svkit::ScoreTrials(model, enroll, test, trials,
                           static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(out.records.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(trials.records.size()));
}
BENCHMARK(BM_PldaScoreTrials)->Arg(1)->Arg(4);

void BM_MinCostSweep(benchmark::State &state) {
  svkit::TrialScores s =
      RandomScores(static_cast<size_t>(state.range(0)),
                   static_cast<size_t>(state.range(0)) * 10, 21);
  svkit::CostParams params;
  for (auto _ : state) {
    svkit::CostResult r = svkit::ComputeMinCost(s, params);
    benchmark::DoNotOptimize(r.mean);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(s.records.size()));
}
BENCHMARK(BM_MinCostSweep)->Arg(1000)->Arg(10000);

void BM_Conv2dForward(benchmark::State &state) {
  const int channels = static_cast<int>(state.range(0));
  svkit::Rng rng(31);
  svkit::Tensor4<float> input(4, channels, 32, 32);
  svkit::Tensor4<float> kernel(channels, channels, 3, 3);
  std::vector<float> bias(static_cast<size_t>(channels));
  for (float &x : input.data) x = static_cast<float>(rng.Gaussian());
  for (float &x : kernel.data) x = static_cast<float>(rng.Gaussian());
  for (float &x : bias) x = static_cast<float>(rng.Gaussian());
  for (auto _ : state) {
    svkit::Tensor4<float> out = svkit::Conv2dForward(input, kernel, bias);
    benchmark::DoNotOptimize(out.data.data());
  }
}
BENCHMARK(BM_Conv2dForward)->Arg(4)->Arg(16);

void BM_AlawRoundTrip(benchmark::State &state) {
  svkit::Rng rng(41);
  svkit::PcmBuffer pcm;
  pcm.samples.resize(static_cast<size_t>(state.range(0)));
  for (int16_t &s : pcm.samples)
    s = static_cast<int16_t>(rng.Index(65536) - 32768);
  for (auto _ : state) {
    svkit::PcmBuffer out = svkit::TranscodeAlaw(pcm);
    benchmark::DoNotOptimize(out.samples.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(pcm.samples.size()));
}
BENCHMARK(BM_AlawRoundTrip)->Arg(80000);

}  // namespace

BENCHMARK_MAIN();
