// core/include/svkit/error.h

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

#ifndef SVKIT_ERROR_H_
#define SVKIT_ERROR_H_

#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace svkit {

// Malformed or inconsistent input data (bad file, schema mismatch,
// unresolvable id).  Maps to CLI exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &msg) : std::runtime_error(msg) {}
};

// Numerical failure (singular matrix beyond floor, non-convergence).
// Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

namespace internal {

// Stream-style message collector; writes one prefixed line on destruction.
class LogLine {
 public:
  explicit LogLine(const char *prefix) { os_ << prefix; }
  ~LogLine() { std::cerr << os_.str() << std::endl; }
  template <typename T>
  LogLine &operator<<(const T &v) {
    os_ << v;
    return *this;
  }

 private:
  std::ostringstream os_;
};

}  // namespace internal

}  // namespace svkit

#define SVKIT_WARN ::svkit::internal::LogLine("WARNING (svkit): ")
#define SVKIT_LOG ::svkit::internal::LogLine("LOG (svkit): ")

#endif  // SVKIT_ERROR_H_
