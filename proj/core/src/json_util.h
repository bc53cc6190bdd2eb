// core/src/json_util.h

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

// Internal helpers shared by the model-file readers and writers.  Not
// installed; the public headers stay free of the JSON dependency.

#ifndef SVKIT_SRC_JSON_UTIL_H_
#define SVKIT_SRC_JSON_UTIL_H_

#include <fstream>
#include <string>

#include <json.hpp>

#include "svkit/error.h"
#include "svkit/linalg.h"

namespace svkit {
namespace internal {

using Json = nlohmann::json;

inline Json VectorToJson(const Vector &v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); i++) a.push_back(v[i]);
  return a;
}

inline Vector VectorFromJson(const Json &a, const char *what) {
  if (!a.is_array()) throw DataError(std::string(what) + " is not an array");
  Vector v(a.size());
  for (size_t i = 0; i < a.size(); i++) {
    if (!a[i].is_number())
      throw DataError(std::string(what) + " contains a non-number");
    v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  }
  return v;
}

// Matrices travel as flat row-major arrays; shape comes from the enclosing
// schema's dim fields.
inline Json MatrixToJson(const Matrix &m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); r++)
    for (Eigen::Index c = 0; c < m.cols(); c++) a.push_back(m(r, c));
  return a;
}

inline Matrix MatrixFromJson(const Json &a, Eigen::Index rows,
                             Eigen::Index cols, const char *what) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != rows * cols)
    throw DataError(std::string(what) + " has wrong element count");
  Matrix m(rows, cols);
  size_t k = 0;
  for (Eigen::Index r = 0; r < rows; r++)
    for (Eigen::Index c = 0; c < cols; c++) {
      if (!a[k].is_number())
        throw DataError(std::string(what) + " contains a non-number");
      m(r, c) = a[k++].get<double>();
    }
  return m;
}

inline Json LoadJsonFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path);
  Json j;
  try {
    is >> j;
  } catch (const Json::parse_error &e) {
    throw DataError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

inline void SaveJsonFile(const Json &j, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
  if (!os) throw DataError("I/O failure writing " + path);
}

// Fetches a required field or dies with the path context.
inline const Json &Require(const Json &j, const char *field,
                           const std::string &path) {
  auto it = j.find(field);
  if (it == j.end())
    throw DataError("missing field '" + std::string(field) + "' in " + path);
  return *it;
}

}  // namespace internal
}  // namespace svkit

#endif  // SVKIT_SRC_JSON_UTIL_H_
