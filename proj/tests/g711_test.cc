// tests/g711_test.cc

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

#include <array>
#include <cstdlib>
#include <set>

#include "doctest.h"
#include "svkit/error.h"
#include "testutil.h"

namespace {

// Reference decode table built from the standard's segment layout, not from
// the library's tables: strip the even-bit inversion, expand
// (exponent, mantissa) to the 13-bit magnitude, scale to 16 bits.
std::array<int16_t, 256> ReferenceDecodeTable() {
  std::array<int16_t, 256> table{};
  for (int code = 0; code < 256; code++) {
    int a = code ^ 0x55;
    bool positive = (a & 0x80) != 0;
    int exponent = (a >> 4) & 0x7;
    int mantissa = a & 0xF;
    int magnitude13 = exponent == 0 ? 2 * mantissa + 1
                                    : (2 * mantissa + 33) << (exponent - 1);
    int value = 8 * magnitude13;
    table[code] = static_cast<int16_t>(positive ? value : -value);
  }
  return table;
}

// Width of the quantization cell for a code, in 16-bit units.
int StepSixteen(uint8_t code) {
  int a = code ^ 0x55;
  int exponent = (a >> 4) & 0x7;
  return exponent == 0 ? 16 : 8 << exponent;
}

}  // namespace

TEST_CASE("decoding matches the independently generated reference table") {
  std::array<int16_t, 256> want = ReferenceDecodeTable();
  for (int code = 0; code < 256; code++)
    CHECK(svkit::AlawDecode(static_cast<uint8_t>(code)) == want[code]);
}

TEST_CASE("known spot values") {
  CHECK(svkit::AlawEncode(0) == 0xD5);
  CHECK(svkit::AlawEncode(-1) == 0x55);
  CHECK(svkit::AlawDecode(0xD5) == 8);
  CHECK(svkit::AlawDecode(0x55) == -8);
}

TEST_CASE("encode is a left inverse of decode on all 256 codes") {
  std::set<int16_t> values;
  for (int code = 0; code < 256; code++) {
    uint8_t c = static_cast<uint8_t>(code);
    int16_t x = svkit::AlawDecode(c);
    CHECK(svkit::AlawEncode(x) == c);
    values.insert(x);
  }
  // All decoded values distinct, so the code-to-value map is a bijection.
  CHECK(values.size() == 256);
}

TEST_CASE("decode-encode-decode is idempotent over the full input range") {
  for (int x = -32768; x <= 32767; x++) {
    int16_t sample = static_cast<int16_t>(x);
    uint8_t code = svkit::AlawEncode(sample);
    int16_t once = svkit::AlawDecode(code);
    CHECK(svkit::AlawEncode(once) == code);
    CHECK(svkit::AlawDecode(svkit::AlawEncode(once)) == once);
  }
}

TEST_CASE("quantization error is bounded by the segment step") {
  for (int x = -32768; x <= 32767; x++) {
    int16_t sample = static_cast<int16_t>(x);
    uint8_t code = svkit::AlawEncode(sample);
    int16_t back = svkit::AlawDecode(code);
    CHECK(std::abs(static_cast<int>(back) - x) <= StepSixteen(code));
  }
}

TEST_CASE("sign flips mirror the decoded value") {
  for (int code = 0; code < 256; code++) {
    uint8_t c = static_cast<uint8_t>(code);
    CHECK(svkit::AlawDecode(c ^ 0x80) ==
          -svkit::AlawDecode(c));
  }
}

TEST_CASE("buffers transcode sample by sample") {
  svkit::PcmBuffer in;
  in.sample_rate_hz = 8000;
  for (int i = 0; i < 1000; i++)
    in.samples.push_back(static_cast<int16_t>(37 * i - 16000));
  svkit::ALawBuffer coded = svkit::AlawEncodeBuffer(in);
  REQUIRE(coded.bytes.size() == in.samples.size());
  CHECK(coded.sample_rate_hz == 8000);
  svkit::PcmBuffer back = svkit::AlawDecodeBuffer(coded);
  REQUIRE(back.samples.size() == in.samples.size());
  for (size_t i = 0; i < in.samples.size(); i++) {
    CHECK(coded.bytes[i] == svkit::AlawEncode(in.samples[i]));
    CHECK(back.samples[i] == svkit::AlawDecode(coded.bytes[i]));
  }

  svkit::PcmBuffer round = svkit::TranscodeAlaw(in);
  REQUIRE(round.samples.size() == in.samples.size());
  for (size_t i = 0; i < in.samples.size(); i++)
    CHECK(round.samples[i] ==
          svkit::AlawDecode(svkit::AlawEncode(in.samples[i])));
  // A second pass changes nothing.
  svkit::PcmBuffer again = svkit::TranscodeAlaw(round);
  CHECK(again.samples == round.samples);
}

TEST_CASE("transcoding only accepts 8 kHz input") {
  svkit::PcmBuffer in;
  in.sample_rate_hz = 16000;
  in.samples = {0, 1, 2};
  CHECK_THROWS_WITH_AS(svkit::TranscodeAlaw(in),
                       doctest::Contains("16000"), svkit::DataError);
  // Raw buffer coding carries whatever rate it was given.
  CHECK(svkit::AlawEncodeBuffer(in).sample_rate_hz == 16000);
}
