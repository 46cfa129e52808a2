// Copyright 2026 The QPTE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace qpte {

/// Mono PCM samples in [-1, 1).
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 8000;
};

/// 16-bit PCM or 32-bit float RIFF/WAVE. Multichannel input is averaged to
/// mono (with a warning on stderr). Throws IoError / FormatError.
AudioBuffer load_wav(const std::filesystem::path& path);

/// Writes 16-bit mono PCM. Samples are scaled by 32768, rounded, and
/// clamped to the int16 range.
void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer);

std::int16_t to_pcm16(double sample);
inline double from_pcm16(std::int16_t value) { return value / 32768.0; }

}  // namespace qpte
