// core/src/g711.cc

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

#include "svkit/g711.h"

#include <string>

#include "svkit/error.h"

namespace svkit {

namespace {

constexpr int16_t kQuantMask = 0x0F;
constexpr int kSegShift = 4;
constexpr int16_t kSegMask = 0x70;
constexpr uint8_t kSignBit = 0x80;

// Upper boundary of each a-law segment in the 13-bit magnitude domain.
constexpr int16_t kSegEnd[8] = {0x1F,  0x3F,  0x7F,  0xFF,
                                0x1FF, 0x3FF, 0x7FF, 0xFFF};

int SegmentFor(int16_t magnitude) {
  for (int i = 0; i < 8; ++i) {
    if (magnitude <= kSegEnd[i]) return i;
  }
  return 8;
}

}  // namespace

uint8_t AlawEncode(int16_t sample) {
  int16_t pcm = static_cast<int16_t>(sample >> 3);
  int16_t mask;
  if (pcm >= 0) {
    mask = 0xD5;  // even-bit inversion, sign bit set
  } else {
    mask = 0x55;
    pcm = static_cast<int16_t>(-pcm - 1);
  }
  int seg = SegmentFor(pcm);
  if (seg >= 8) return static_cast<uint8_t>(0x7F ^ mask);
  uint8_t aval = static_cast<uint8_t>(seg << kSegShift);
  // Segments 0 and 1 share a step size, so the mantissa shift is the same.
  if (seg < 2) {
    aval |= (pcm >> 1) & kQuantMask;
  } else {
    aval |= (pcm >> seg) & kQuantMask;
  }
  return static_cast<uint8_t>(aval ^ mask);
}

int16_t AlawDecode(uint8_t code) {
  uint8_t a = code ^ 0x55;
  int16_t t = static_cast<int16_t>((a & kQuantMask) << 4);
  int seg = (a & kSegMask) >> kSegShift;
  switch (seg) {
    case 0:
      t = static_cast<int16_t>(t + 8);
      break;
    case 1:
      t = static_cast<int16_t>(t + 0x108);
      break;
    default:
      t = static_cast<int16_t>(t + 0x108);
      t = static_cast<int16_t>(t << (seg - 1));
      break;
  }
  // After the XOR the high bit reads 1 for positive samples.
  return (a & kSignBit) ? t : static_cast<int16_t>(-t);
}

ALawBuffer AlawEncodeBuffer(const PcmBuffer &buffer) {
  ALawBuffer out;
  out.sample_rate_hz = buffer.sample_rate_hz;
  out.bytes.reserve(buffer.samples.size());
  for (int16_t s : buffer.samples) out.bytes.push_back(AlawEncode(s));
  return out;
}

PcmBuffer AlawDecodeBuffer(const ALawBuffer &buffer) {
  PcmBuffer out;
  out.sample_rate_hz = buffer.sample_rate_hz;
  out.samples.reserve(buffer.bytes.size());
  for (uint8_t c : buffer.bytes) out.samples.push_back(AlawDecode(c));
  return out;
}

PcmBuffer TranscodeAlaw(const PcmBuffer &buffer) {
  if (buffer.sample_rate_hz != 8000) {
    throw DataError("a-law transcode requires 8000 Hz input, got " +
                    std::to_string(buffer.sample_rate_hz) + " Hz");
  }
  PcmBuffer out;
  out.sample_rate_hz = buffer.sample_rate_hz;
  out.samples.reserve(buffer.samples.size());
  for (int16_t s : buffer.samples) out.samples.push_back(AlawDecode(AlawEncode(s)));
  return out;
}

}  // namespace svkit
