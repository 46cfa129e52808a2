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

// Chunked audio processing: each chunk of 2^n samples is multiplied by the
// matching chunk of a second signal on its own n+2 qubit statevector, and
// all four ancilla components are kept (quadraphonic output).

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpte/encoding.hpp"
#include "qpte/ops.hpp"
#include "qpte/sampling.hpp"
#include "qpte/wav.hpp"

namespace qpte {

enum class NormalizationMode { kAssumePositive, kShiftScale };

std::string to_string(NormalizationMode mode);
/// "assume-positive" or "shift-scale"; throws ArgumentError otherwise.
NormalizationMode parse_normalization(std::string_view text);

/// values = scale * sample + offset, clamped to [0, 1 - epsilon].
struct NormalizedSignal {
  std::vector<double> values;
  NormalizationMode mode = NormalizationMode::kAssumePositive;
  double scale = 1.0;
  double offset = 0.0;
};

/// Throws DomainError for a negative sample in assume-positive mode.
NormalizedSignal normalize_for_encoding(const AudioBuffer& buffer,
                                        NormalizationMode mode);

struct ChunkPlan {
  std::size_t chunk_size = 8;
  std::size_t num_chunks = 0;
  std::size_t tail_padding = 0;
  std::size_t total_samples = 0;
  NormalizationMode normalization_mode = NormalizationMode::kAssumePositive;
  /// Per-chunk multiplier applied to bring values into the encodable range.
  std::vector<double> scale_factors;
};

struct ChunkSet {
  ChunkPlan plan;
  std::vector<SignalChunk> chunks;
};

/// Consecutive disjoint chunks; the last one is zero-padded.
ChunkSet make_chunks(std::span<const double> samples, std::size_t chunk_size,
                     NormalizationMode mode = NormalizationMode::kAssumePositive);

/// Concatenation of the chunks with the tail padding removed.
std::vector<double> unchunk(const ChunkSet& set);

struct ProcessOptions {
  /// Shots per chunk; nullopt runs in exact statevector mode.
  std::optional<std::uint64_t> shots;
  unsigned workers = 1;
  Seed base_seed = 0;
  /// Order in which chunks are dispatched; empty means ascending. Results
  /// are always assembled by chunk index.
  std::vector<std::size_t> schedule;
};

struct ChunkMetrics {
  std::size_t chunk_index = 0;
  MetricsReport report;
  double scale_f = 1.0;
  double scale_g = 1.0;

  static std::string csv_header();
  std::string to_csv_row() const;
};

struct QuadOutput {
  /// Indexed by AncillaBits::offset().
  std::array<std::vector<double>, 4> channels;
  std::vector<ChunkMetrics> metrics;

  const std::vector<double>& channel(AncillaBits bits) const {
    return channels[bits.offset()];
  }
};

QuadOutput process_chunks(const ChunkSet& f, const ChunkSet& g,
                          const ProcessOptions& options);

std::string component_filename(AncillaBits bits);

void write_metrics_csv(const std::filesystem::path& path,
                       std::span<const ChunkMetrics> metrics);

/// Writes component_00.wav .. component_11.wav trimmed to the original length
/// plus metrics.csv. Shift-scale inputs are mapped back with 2s - 1.
void stitch_and_write(const QuadOutput& output, const ChunkPlan& plan,
                      int sample_rate, const std::filesystem::path& out_dir);

/// Maps an encoded-domain output sample back to audio range.
double to_audio_range(double value, NormalizationMode mode);

/// Creates `dir` if needed; throws IoError if it cannot be written.
void ensure_output_dir(const std::filesystem::path& dir);

}  // namespace qpte
