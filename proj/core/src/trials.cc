// core/src/trials.cc

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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "svkit/error.h"

namespace svkit {

namespace {

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double ParseScore(const std::string &s, int line_no, const std::string &path) {
  size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    throw DataError("bad score '" + s + "' at line " + std::to_string(line_no) +
                    " of " + path);
  }
  if (pos != s.size() || !std::isfinite(v))
    throw DataError("bad score '" + s + "' at line " + std::to_string(line_no) +
                    " of " + path);
  return v;
}

}  // namespace

size_t TrialScores::NumTargets() const {
  size_t n = 0;
  for (const TrialRecord &r : records) n += (r.key == TrialKey::kTarget);
  return n;
}

size_t TrialScores::NumNontargets() const {
  size_t n = 0;
  for (const TrialRecord &r : records) n += (r.key == TrialKey::kNontarget);
  return n;
}

TrialScores LoadTrialList(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open trial list: " + path);
  TrialScores out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() < 2 || f.size() > 4)
      throw DataError("expected 2 to 4 tab-separated fields at line " +
                      std::to_string(line_no) + " of " + path);
    TrialRecord r;
    r.line = line_no;
    r.enroll_id = f[0];
    r.test_id = f[1];
    if (f.size() >= 3) {
      if (f[2] == "target")
        r.key = TrialKey::kTarget;
      else if (f[2] == "nontarget")
        r.key = TrialKey::kNontarget;
      else
        throw DataError("bad key label '" + f[2] + "' at line " +
                        std::to_string(line_no) + " of " + path +
                        " (want target|nontarget)");
    }
    if (f.size() == 4 && !f[3].empty()) r.partition = f[3];
    out.records.push_back(std::move(r));
  }
  return out;
}

void SaveTrialList(const TrialScores &trials, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open for writing: " + path);
  for (const TrialRecord &r : trials.records) {
    if (r.key == TrialKey::kUnknown)
      throw DataError("key list entry (" + r.enroll_id + ", " + r.test_id +
                      ") has no target/nontarget label");
    os << r.enroll_id << '\t' << r.test_id << '\t'
       << (r.key == TrialKey::kTarget ? "target" : "nontarget");
    if (r.partition) os << '\t' << *r.partition;
    os << '\n';
  }
  if (!os) throw DataError("I/O failure writing " + path);
}

TrialScores LoadScoreFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open score file: " + path);
  TrialScores out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    line_no++;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() != 3)
      throw DataError("expected 3 tab-separated fields at line " +
                      std::to_string(line_no) + " of " + path);
    TrialRecord r;
    r.line = line_no;
    r.enroll_id = f[0];
    r.test_id = f[1];
    r.score = ParseScore(f[2], line_no, path);
    out.records.push_back(std::move(r));
  }
  return out;
}

void SaveScoreFile(const TrialScores &scores, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open for writing: " + path);
  char buf[40];
  for (const TrialRecord &r : scores.records) {
    std::snprintf(buf, sizeof(buf), "%.17g", r.score);
    os << r.enroll_id << '\t' << r.test_id << '\t' << buf << '\n';
  }
  if (!os) throw DataError("I/O failure writing " + path);
}

TrialScores JoinScoresWithKeys(const TrialScores &scores,
                               const TrialScores &keys) {
  std::unordered_map<std::string, double> by_pair;
  by_pair.reserve(scores.records.size());
  for (const TrialRecord &r : scores.records)
    by_pair[r.enroll_id + '\t' + r.test_id] = r.score;

  TrialScores out;
  out.records.reserve(keys.records.size());
  std::unordered_set<std::string> used;
  for (const TrialRecord &k : keys.records) {
    std::string pair = k.enroll_id + '\t' + k.test_id;
    auto it = by_pair.find(pair);
    if (it == by_pair.end())
      throw DataError("no score for keyed trial (" + k.enroll_id + ", " +
                      k.test_id + ")");
    TrialRecord r = k;
    r.score = it->second;
    out.records.push_back(std::move(r));
    used.insert(std::move(pair));
  }
  if (used.size() < by_pair.size())
    SVKIT_WARN << (by_pair.size() - used.size())
               << " scored trial(s) absent from the key were dropped";
  return out;
}

}  // namespace svkit
