// core/include/svkit/g711.h

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

#ifndef SVKIT_G711_H_
#define SVKIT_G711_H_

#include <cstdint>
#include <vector>

namespace svkit {

struct PcmBuffer {
  std::vector<int16_t> samples;
  int sample_rate_hz = 8000;
};

struct ALawBuffer {
  std::vector<uint8_t> bytes;
  int sample_rate_hz = 8000;
};

// G.711 a-law with even-bit inversion (0x55 XOR).  Encoding drops the
// bottom 3 bits (13-bit magnitude), finds the segment, and packs
// sign|segment|mantissa; decoding reproduces the standard's exact integer
// expansion, so encode(decode(c)) = c for every code.
uint8_t AlawEncode(int16_t sample);
int16_t AlawDecode(uint8_t code);

ALawBuffer AlawEncodeBuffer(const PcmBuffer &buffer);
PcmBuffer AlawDecodeBuffer(const ALawBuffer &buffer);

// decode(encode(x)) per sample: the channel's quantization distortion
// without a container change.  Input must already be 8 kHz (resampling is
// out of scope); DataError otherwise.
PcmBuffer TranscodeAlaw(const PcmBuffer &buffer);

}  // namespace svkit

#endif  // SVKIT_G711_H_
