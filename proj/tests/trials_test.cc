// tests/trials_test.cc

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

#include "svkit/trials.h"

#include <fstream>

#include "doctest.h"
#include "svkit/error.h"
#include "testutil.h"

using svkit::TrialKey;
using svkit::TrialRecord;
using svkit::TrialScores;

namespace {

TrialRecord Rec(const std::string &e, const std::string &t, TrialKey key,
                double score = 0.0) {
  TrialRecord r;
  r.enroll_id = e;
  r.test_id = t;
  r.key = key;
  r.score = score;
  return r;
}

}  // namespace

TEST_CASE("key list round-trip with and without partitions") {
  svtest::TempDir tmp;
  TrialScores trials;
  trials.records.push_back(Rec("e1", "t1", TrialKey::kTarget));
  trials.records.push_back(Rec("e1", "t2", TrialKey::kNontarget));
  trials.records.back().partition = "female";
  std::string path = tmp.File("key.tsv");
  svkit::SaveTrialList(trials, path);
  TrialScores back = svkit::LoadTrialList(path);
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[0].key == TrialKey::kTarget);
  CHECK_FALSE(back.records[0].partition.has_value());
  CHECK(back.records[1].key == TrialKey::kNontarget);
  CHECK(back.records[1].partition == "female");
  CHECK(back.records[0].line == 1);
  CHECK(back.records[1].line == 2);
}

TEST_CASE("an unlabeled record cannot be written as a key") {
  svtest::TempDir tmp;
  TrialScores trials;
  trials.records.push_back(Rec("e1", "t1", TrialKey::kUnknown));
  CHECK_THROWS_AS(svkit::SaveTrialList(trials, tmp.File("k.tsv")),
                  svkit::DataError);
}

TEST_CASE("score file round-trips full double precision") {
  svtest::TempDir tmp;
  TrialScores scores;
  scores.records.push_back(
      Rec("e1", "t1", TrialKey::kUnknown, 1.0 / 3.0));
  scores.records.push_back(
      Rec("e2", "t2", TrialKey::kUnknown, -1.2345678901234567e-8));
  std::string path = tmp.File("scores.tsv");
  svkit::SaveScoreFile(scores, path);
  TrialScores back = svkit::LoadScoreFile(path);
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[0].score == 1.0 / 3.0);
  CHECK(back.records[1].score == -1.2345678901234567e-8);
}

TEST_CASE("trial list without labels loads as unknown") {
  svtest::TempDir tmp;
  std::string path = tmp.File("trials.tsv");
  {
    std::ofstream os(path);
    os << "e1\tt1\n";
    os << "e2\tt2\n";
  }
  TrialScores t = svkit::LoadTrialList(path);
  REQUIRE(t.records.size() == 2);
  CHECK(t.records[0].key == TrialKey::kUnknown);
  CHECK(t.NumTargets() == 0);
  CHECK(t.NumNontargets() == 0);
}

TEST_CASE("malformed rows name their line") {
  svtest::TempDir tmp;
  std::string path = tmp.File("bad.tsv");
  {
    std::ofstream os(path);
    os << "e1\tt1\ttarget\n";
    os << "e2\tt2\tmaybe\n";
  }
  CHECK_THROWS_WITH_AS(svkit::LoadTrialList(path), doctest::Contains("line 2"),
                       svkit::DataError);
  {
    std::ofstream os(path);
    os << "only-one-column\n";
  }
  CHECK_THROWS_AS(svkit::LoadTrialList(path), svkit::DataError);
  {
    std::ofstream os(path);
    os << "e1\tt1\tnot-a-score\n";
  }
  CHECK_THROWS_AS(svkit::LoadScoreFile(path), svkit::DataError);
}

TEST_CASE("join carries labels and partitions onto scores in key order") {
  TrialScores scores;
  scores.records.push_back(Rec("e1", "t2", TrialKey::kUnknown, 0.25));
  scores.records.push_back(Rec("e1", "t1", TrialKey::kUnknown, 0.75));
  TrialScores keys;
  keys.records.push_back(Rec("e1", "t1", TrialKey::kTarget));
  keys.records.push_back(Rec("e1", "t2", TrialKey::kNontarget));
  keys.records.back().partition = "tel";
  TrialScores joined = svkit::JoinScoresWithKeys(scores, keys);
  REQUIRE(joined.records.size() == 2);
  CHECK(joined.records[0].test_id == "t1");
  CHECK(joined.records[0].score == 0.75);
  CHECK(joined.records[0].key == TrialKey::kTarget);
  CHECK(joined.records[1].score == 0.25);
  CHECK(joined.records[1].partition == "tel");
}

TEST_CASE("join reports a keyed pair with no score") {
  TrialScores scores;
  scores.records.push_back(Rec("e1", "t1", TrialKey::kUnknown, 0.5));
  TrialScores keys;
  keys.records.push_back(Rec("e1", "t1", TrialKey::kTarget));
  keys.records.push_back(Rec("e9", "t9", TrialKey::kNontarget));
  CHECK_THROWS_WITH_AS(svkit::JoinScoresWithKeys(scores, keys),
                       doctest::Contains("e9"), svkit::DataError);
}

TEST_CASE("join drops scored pairs absent from the key") {
  TrialScores scores;
  scores.records.push_back(Rec("e1", "t1", TrialKey::kUnknown, 0.5));
  scores.records.push_back(Rec("extra", "t1", TrialKey::kUnknown, 0.1));
  TrialScores keys;
  keys.records.push_back(Rec("e1", "t1", TrialKey::kTarget));
  TrialScores joined = svkit::JoinScoresWithKeys(scores, keys);
  CHECK(joined.records.size() == 1);
  CHECK(joined.NumTargets() == 1);
}

TEST_CASE("class counters") {
  TrialScores t;
  t.records.push_back(Rec("a", "b", TrialKey::kTarget));
  t.records.push_back(Rec("a", "c", TrialKey::kNontarget));
  t.records.push_back(Rec("a", "d", TrialKey::kNontarget));
  t.records.push_back(Rec("a", "e", TrialKey::kUnknown));
  CHECK(t.NumTargets() == 1);
  CHECK(t.NumNontargets() == 2);
}
