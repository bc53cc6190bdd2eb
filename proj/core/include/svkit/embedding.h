// core/include/svkit/embedding.h

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

#ifndef SVKIT_EMBEDDING_H_
#define SVKIT_EMBEDDING_H_

#include <optional>
#include <string>
#include <vector>

#include "svkit/linalg.h"

namespace svkit {

// One speaker embedding plus the side metadata that rides along through the
// pipeline.  Optional fields are genuinely absent when not set; downstream
// stages that need them (duration-based quality measures, partition
// calibration) check presence explicitly.
struct Embedding {
  std::string id;
  Vector vector;
  std::optional<std::string> speaker;
  std::optional<std::string> domain;
  std::optional<float> duration_s;
  std::optional<std::string> partition;
};

// Immutable after construction by convention; safe to share across readers.
struct EmbeddingSet {
  int dim = 0;
  std::vector<Embedding> items;

  // Checks the dim/uniqueness/finiteness invariants; throws DataError.
  void Validate() const;

  const Embedding &Find(const std::string &id) const;  // throws DataError
};

enum class EmbeddingFormat { kBinary, kTsv };

// Binary container ("SVEC", version 0x01):
//   magic "SVEC" | u8 version | u32le dim | u32le count
// then per record:
//   u16le id_len | id bytes (UTF-8) | u8 bitmask
//   (bit0 speaker, bit1 domain, bit2 duration, bit3 partition)
//   optional fields in bitmask bit order: speaker / domain as u16le-prefixed
//   strings, duration as f32le, partition as u16le-prefixed string,
// then dim x f32le vector components.
//
// TSV: "id<TAB>space-separated floats", optional "#dim=<d>" first line.
// Vector payloads are f32; a set whose values are f32-representable (any set
// previously read from disk) round-trips bit-exactly.
EmbeddingSet LoadEmbeddings(const std::string &path, EmbeddingFormat format);
void SaveEmbeddings(const EmbeddingSet &set, const std::string &path,
                    EmbeddingFormat format);

// Cosine similarity a.b / (|a||b|); throws DataError on a zero vector.
double ScoreCosine(const Embedding &a, const Embedding &b);
double CosineSimilarity(const Vector &a, const Vector &b);

}  // namespace svkit

#endif  // SVKIT_EMBEDDING_H_
