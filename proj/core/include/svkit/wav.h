// core/include/svkit/wav.h

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

#ifndef SVKIT_WAV_H_
#define SVKIT_WAV_H_

#include <string>

#include "svkit/g711.h"

namespace svkit {

// Minimal RIFF/WAVE support: mono 16-bit PCM only.  Unknown chunks are
// skipped on read; anything that is not mono PCM16 is a DataError.
PcmBuffer ReadWav(const std::string &path);
void WriteWav(const PcmBuffer &buffer, const std::string &path);

// Headerless little-endian int16 stream; the caller supplies the rate.
PcmBuffer ReadRawPcm(const std::string &path, int sample_rate_hz);
void WriteRawPcm(const PcmBuffer &buffer, const std::string &path);

}  // namespace svkit

#endif  // SVKIT_WAV_H_
