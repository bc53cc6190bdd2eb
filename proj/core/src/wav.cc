// core/src/wav.cc

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

#include "svkit/wav.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "svkit/error.h"

namespace svkit {

namespace {

uint32_t ReadU32(std::istream &in, const std::string &path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char *>(b), 4)) {
    throw DataError("truncated wav file: " + path);
  }
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t ReadU16(std::istream &in, const std::string &path) {
  unsigned char b[2];
  if (!in.read(reinterpret_cast<char *>(b), 2)) {
    throw DataError("truncated wav file: " + path);
  }
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void ReadTag(std::istream &in, char tag[4], const std::string &path) {
  if (!in.read(tag, 4)) throw DataError("truncated wav file: " + path);
}

void WriteU32(std::ostream &out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF),
                        static_cast<unsigned char>((v >> 16) & 0xFF),
                        static_cast<unsigned char>((v >> 24) & 0xFF)};
  out.write(reinterpret_cast<const char *>(b), 4);
}

void WriteU16(std::ostream &out, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xFF),
                        static_cast<unsigned char>((v >> 8) & 0xFF)};
  out.write(reinterpret_cast<const char *>(b), 2);
}

}  // namespace

PcmBuffer ReadWav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open wav file: " + path);

  char tag[4];
  ReadTag(in, tag, path);
  if (std::memcmp(tag, "RIFF", 4) != 0) {
    throw DataError("not a RIFF file: " + path);
  }
  ReadU32(in, path);  // container size, unused
  ReadTag(in, tag, path);
  if (std::memcmp(tag, "WAVE", 4) != 0) {
    throw DataError("not a WAVE file: " + path);
  }

  PcmBuffer out;
  bool have_fmt = false;
  bool have_data = false;
  while (!have_data) {
    if (!in.read(tag, 4)) break;
    uint32_t chunk_size = ReadU32(in, path);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw DataError("malformed fmt chunk: " + path);
      uint16_t format = ReadU16(in, path);
      uint16_t channels = ReadU16(in, path);
      uint32_t rate = ReadU32(in, path);
      ReadU32(in, path);  // byte rate
      ReadU16(in, path);  // block align
      uint16_t bits = ReadU16(in, path);
      if (format != 1 || bits != 16) {
        throw DataError("only 16-bit PCM wav is supported: " + path);
      }
      if (channels != 1) {
        throw DataError("only mono wav is supported, got " +
                        std::to_string(channels) + " channels: " + path);
      }
      out.sample_rate_hz = static_cast<int>(rate);
      have_fmt = true;
      if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw DataError("data chunk before fmt chunk: " + path);
      size_t n = chunk_size / 2;
      out.samples.resize(n);
      std::vector<unsigned char> raw(chunk_size);
      if (!in.read(reinterpret_cast<char *>(raw.data()), chunk_size)) {
        throw DataError("truncated wav data chunk: " + path);
      }
      for (size_t i = 0; i < n; ++i) {
        out.samples[i] = static_cast<int16_t>(
            static_cast<uint16_t>(raw[2 * i] | (raw[2 * i + 1] << 8)));
      }
      have_data = true;
    } else {
      // Chunks are word aligned; odd sizes carry a pad byte.
      in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
    }
  }
  if (!have_data) throw DataError("wav file has no data chunk: " + path);
  return out;
}

void WriteWav(const PcmBuffer &buffer, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write wav file: " + path);

  uint32_t data_size = static_cast<uint32_t>(buffer.samples.size() * 2);
  uint32_t rate = static_cast<uint32_t>(buffer.sample_rate_hz);
  out.write("RIFF", 4);
  WriteU32(out, 36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  WriteU32(out, 16);
  WriteU16(out, 1);  // PCM
  WriteU16(out, 1);  // mono
  WriteU32(out, rate);
  WriteU32(out, rate * 2);
  WriteU16(out, 2);
  WriteU16(out, 16);
  out.write("data", 4);
  WriteU32(out, data_size);
  for (int16_t s : buffer.samples) {
    WriteU16(out, static_cast<uint16_t>(s));
  }
  if (!out) throw DataError("failed writing wav file: " + path);
}

PcmBuffer ReadRawPcm(const std::string &path, int sample_rate_hz) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open pcm file: " + path);
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (raw.size() % 2 != 0) {
    throw DataError("raw pcm file has odd byte count: " + path);
  }
  PcmBuffer out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(raw.size() / 2);
  for (size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] = static_cast<int16_t>(
        static_cast<uint16_t>(raw[2 * i] | (raw[2 * i + 1] << 8)));
  }
  return out;
}

void WriteRawPcm(const PcmBuffer &buffer, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write pcm file: " + path);
  for (int16_t s : buffer.samples) {
    WriteU16(out, static_cast<uint16_t>(s));
  }
  if (!out) throw DataError("failed writing pcm file: " + path);
}

}  // namespace svkit
