// core/src/embedding.cc

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

#include "svkit/embedding.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "svkit/error.h"

namespace svkit {

namespace {

constexpr char kMagic[4] = {'S', 'V', 'E', 'C'};
constexpr uint8_t kVersion = 0x01;

constexpr uint8_t kHasSpeaker = 1u << 0;
constexpr uint8_t kHasDomain = 1u << 1;
constexpr uint8_t kHasDuration = 1u << 2;
constexpr uint8_t kHasPartition = 1u << 3;

template <typename T>
void WriteLe(std::ostream &os, T value) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  os.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T ReadLe(std::istream &is, const char *what) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char *>(buf), sizeof(T));
  if (!is) throw DataError(std::string("unexpected end of file reading ") + what);
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

void WriteString16(std::ostream &os, const std::string &s) {
  if (s.size() > std::numeric_limits<uint16_t>::max())
    throw DataError("string field longer than 65535 bytes: " + s.substr(0, 32));
  WriteLe<uint16_t>(os, static_cast<uint16_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string ReadString16(std::istream &is, const char *what) {
  uint16_t len = ReadLe<uint16_t>(is, what);
  std::string s(len, '\0');
  is.read(s.data(), len);
  if (!is) throw DataError(std::string("unexpected end of file reading ") + what);
  return s;
}

EmbeddingSet LoadBinary(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open embedding file: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("malformed header (bad magic) in " + path);
  uint8_t version = ReadLe<uint8_t>(is, "version");
  if (version != kVersion)
    throw DataError("unsupported embedding file version " +
                    std::to_string(version) + " in " + path);
  uint32_t dim = ReadLe<uint32_t>(is, "dim");
  uint32_t count = ReadLe<uint32_t>(is, "count");
  if (dim == 0) throw DataError("malformed header (dim = 0) in " + path);

  EmbeddingSet set;
  set.dim = static_cast<int>(dim);
  set.items.reserve(count);
  std::unordered_set<std::string> seen;
  for (uint32_t r = 0; r < count; r++) {
    Embedding e;
    e.id = ReadString16(is, "record id");
    if (!seen.insert(e.id).second)
      throw DataError("duplicate id '" + e.id + "' at record " +
                      std::to_string(r + 1) + " in " + path);
    uint8_t mask = ReadLe<uint8_t>(is, "field bitmask");
    if (mask & kHasSpeaker) e.speaker = ReadString16(is, "speaker");
    if (mask & kHasDomain) e.domain = ReadString16(is, "domain");
    if (mask & kHasDuration) e.duration_s = ReadLe<float>(is, "duration");
    if (mask & kHasPartition) e.partition = ReadString16(is, "partition");
    e.vector.resize(dim);
    for (uint32_t i = 0; i < dim; i++)
      e.vector[i] = static_cast<double>(ReadLe<float>(is, "vector component"));
    if (!e.vector.allFinite())
      throw DataError("non-finite vector component at record " +
                      std::to_string(r + 1) + " in " + path);
    set.items.push_back(std::move(e));
  }
  return set;
}

void SaveBinary(const EmbeddingSet &set, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os.write(kMagic, 4);
  WriteLe<uint8_t>(os, kVersion);
  WriteLe<uint32_t>(os, static_cast<uint32_t>(set.dim));
  WriteLe<uint32_t>(os, static_cast<uint32_t>(set.items.size()));
  for (const Embedding &e : set.items) {
    WriteString16(os, e.id);
    uint8_t mask = 0;
    if (e.speaker) mask |= kHasSpeaker;
    if (e.domain) mask |= kHasDomain;
    if (e.duration_s) mask |= kHasDuration;
    if (e.partition) mask |= kHasPartition;
    WriteLe<uint8_t>(os, mask);
    if (e.speaker) WriteString16(os, *e.speaker);
    if (e.domain) WriteString16(os, *e.domain);
    if (e.duration_s) WriteLe<float>(os, *e.duration_s);
    if (e.partition) WriteString16(os, *e.partition);
    for (int i = 0; i < set.dim; i++)
      WriteLe<float>(os, static_cast<float>(e.vector[i]));
  }
  if (!os) throw DataError("I/O failure writing " + path);
}

EmbeddingSet LoadTsv(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open embedding file: " + path);
  EmbeddingSet set;
  std::unordered_set<std::string> seen;
  std::string line;
  int record = 0;
  bool first = true;
  while (std::getline(is, line)) {
    if (first && line.rfind("#dim=", 0) == 0) {
      set.dim = std::stoi(line.substr(5));
      if (set.dim <= 0) throw DataError("malformed #dim header in " + path);
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    record++;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("missing tab separator at record " +
                      std::to_string(record) + " in " + path);
    Embedding e;
    e.id = line.substr(0, tab);
    if (!seen.insert(e.id).second)
      throw DataError("duplicate id '" + e.id + "' at record " +
                      std::to_string(record) + " in " + path);
    std::istringstream vals(line.substr(tab + 1));
    std::vector<double> v;
    double x;
    while (vals >> x) v.push_back(x);
    if (!vals.eof())
      throw DataError("non-numeric vector component at record " +
                      std::to_string(record) + " in " + path);
    if (set.dim == 0) set.dim = static_cast<int>(v.size());
    if (static_cast<int>(v.size()) != set.dim)
      throw DataError("dimension mismatch at record " + std::to_string(record) +
                      " in " + path + ": got " + std::to_string(v.size()) +
                      " values, expected " + std::to_string(set.dim));
    e.vector = Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
    if (!e.vector.allFinite())
      throw DataError("non-finite vector component at record " +
                      std::to_string(record) + " in " + path);
    set.items.push_back(std::move(e));
  }
  if (set.dim == 0) throw DataError("empty TSV embedding file without #dim header: " + path);
  return set;
}

void SaveTsv(const EmbeddingSet &set, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open for writing: " + path);
  os << "#dim=" << set.dim << "\n";
  os.precision(9);  // f32-faithful
  for (const Embedding &e : set.items) {
    os << e.id << '\t';
    for (int i = 0; i < set.dim; i++) {
      if (i) os << ' ';
      os << static_cast<float>(e.vector[i]);
    }
    os << '\n';
  }
  if (!os) throw DataError("I/O failure writing " + path);
}

}  // namespace

void EmbeddingSet::Validate() const {
  if (dim <= 0) throw DataError("embedding set has non-positive dim");
  std::unordered_set<std::string> seen;
  for (size_t i = 0; i < items.size(); i++) {
    const Embedding &e = items[i];
    if (e.vector.size() != dim)
      throw DataError("dimension mismatch at record " + std::to_string(i + 1) +
                      " (id '" + e.id + "'): " + std::to_string(e.vector.size()) +
                      " vs set dim " + std::to_string(dim));
    if (!e.vector.allFinite())
      throw DataError("non-finite component in embedding '" + e.id + "'");
    if (!seen.insert(e.id).second)
      throw DataError("duplicate id '" + e.id + "' at record " +
                      std::to_string(i + 1));
    if (e.duration_s && *e.duration_s < 0.0f)
      throw DataError("negative duration for embedding '" + e.id + "'");
  }
}

const Embedding &EmbeddingSet::Find(const std::string &id) const {
  for (const Embedding &e : items)
    if (e.id == id) return e;
  throw DataError("unknown embedding id '" + id + "'");
}

EmbeddingSet LoadEmbeddings(const std::string &path, EmbeddingFormat format) {
  return format == EmbeddingFormat::kBinary ? LoadBinary(path) : LoadTsv(path);
}

void SaveEmbeddings(const EmbeddingSet &set, const std::string &path,
                    EmbeddingFormat format) {
  if (format == EmbeddingFormat::kBinary)
    SaveBinary(set, path);
  else
    SaveTsv(set, path);
}

double CosineSimilarity(const Vector &a, const Vector &b) {
  double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0)
    throw DataError("cosine similarity of a zero vector is undefined");
  return a.dot(b) / (na * nb);
}

double ScoreCosine(const Embedding &a, const Embedding &b) {
  return CosineSimilarity(a.vector, b.vector);
}

}  // namespace svkit
