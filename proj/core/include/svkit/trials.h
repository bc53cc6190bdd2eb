// core/include/svkit/trials.h

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

#ifndef SVKIT_TRIALS_H_
#define SVKIT_TRIALS_H_

#include <optional>
#include <string>
#include <vector>

namespace svkit {

enum class TrialKey { kTarget, kNontarget, kUnknown };

struct TrialRecord {
  std::string enroll_id;
  std::string test_id;
  double score = 0.0;
  TrialKey key = TrialKey::kUnknown;
  std::optional<std::string> partition;
  std::optional<std::vector<double>> qm;
  int line = 0;  // source line in the file it was read from; 0 if synthetic
};

struct TrialScores {
  std::vector<TrialRecord> records;

  size_t NumTargets() const;
  size_t NumNontargets() const;
};

// Trial/key list: TSV "enroll<TAB>test" with optional third column
// {target|nontarget} and optional fourth column partition.  Scores stay 0.
TrialScores LoadTrialList(const std::string &path);

// Writes the key form (label required, partition column when present).
void SaveTrialList(const TrialScores &trials, const std::string &path);

// Score file: TSV "enroll<TAB>test<TAB>score".  SaveScoreFile writes scores
// with round-trip (17 significant digit) precision; keys and partitions are
// not part of this format.
TrialScores LoadScoreFile(const std::string &path);
void SaveScoreFile(const TrialScores &scores, const std::string &path);

// One output record per key entry, in key order, carrying the key's label
// and partition and the matching score.  A keyed pair with no score is a
// DataError naming the pair; scored pairs absent from the key are dropped
// with a warning.
TrialScores JoinScoresWithKeys(const TrialScores &scores,
                               const TrialScores &keys);

}  // namespace svkit

#endif  // SVKIT_TRIALS_H_
