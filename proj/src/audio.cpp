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

#include "qpte/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "qpte/error.hpp"
#include "qpte/parallel.hpp"

namespace qpte {

namespace {

constexpr double kMaxEncodable = 1.0 - kEncodingEpsilon;

struct ChunkResult {
  std::array<std::vector<double>, 4> channels;
  ChunkMetrics metrics;
};

ChunkResult process_one(const SignalChunk& f, const SignalChunk& g,
                        double scale_f, double scale_g, std::size_t index,
                        const ProcessOptions& options) {
  const ProductState p = pointwise_multiply_state(f, g, scale_f, scale_g);
  const int n = f.num_index_qubits();

  ChunkResult r;
  r.metrics.chunk_index = index;
  r.metrics.scale_f = scale_f;
  r.metrics.scale_g = scale_g;
  r.metrics.report.shots = options.shots;
  r.metrics.report.seed = derive_seed(options.base_seed, index);

  std::vector<double> ideal_product(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    ideal_product[x] = std::abs(f[x] * g[x]);
  }

  if (!options.shots) {
    for (AncillaBits bits : kAllAncillaPatterns) {
      const std::vector<Complex> c = extract_component(p, bits);
      auto& ch = r.channels[bits.offset()];
      ch.resize(c.size());
      std::transform(c.begin(), c.end(), ch.begin(),
                     [](const Complex& v) { return std::abs(v); });
    }
    r.metrics.report.rmsd_percent =
        rmsd_percent(r.channels[0], ideal_product);
    const std::vector<double> probs = p.state.probabilities();
    r.metrics.report.fidelity_percent =
        distribution_fidelity_percent(probs, probs);
    r.metrics.report.postselect_probability = postselect_probability(p, {0, 0});
    return r;
  }

  const ShotCounts counts =
      sample_counts(p.state, *options.shots, r.metrics.report.seed);
  for (AncillaBits bits : kAllAncillaPatterns) {
    r.channels[bits.offset()] = decode_component(counts, n, bits);
  }
  std::uint64_t hits = 0;
  for (const auto& [outcome, c] : counts.counts) {
    if ((outcome & 3U) == 0) hits += c;
  }
  r.metrics.report.rmsd_percent = rmsd_percent(r.channels[0], ideal_product);
  r.metrics.report.fidelity_percent = fidelity_percent(counts, p.state);
  r.metrics.report.postselect_probability =
      static_cast<double>(hits) / static_cast<double>(counts.shots);
  return r;
}

}  // namespace

std::string to_string(NormalizationMode mode) {
  return mode == NormalizationMode::kAssumePositive ? "assume-positive"
                                                    : "shift-scale";
}

NormalizationMode parse_normalization(std::string_view text) {
  if (text == "assume-positive") return NormalizationMode::kAssumePositive;
  if (text == "shift-scale") return NormalizationMode::kShiftScale;
  throw ArgumentError("unknown normalization mode '" + std::string(text) +
                      "' (expected assume-positive or shift-scale)");
}

NormalizedSignal normalize_for_encoding(const AudioBuffer& buffer,
                                        NormalizationMode mode) {
  NormalizedSignal out;
  out.mode = mode;
  out.values.reserve(buffer.samples.size());
  if (mode == NormalizationMode::kShiftScale) {
    out.scale = 0.5;
    out.offset = 0.5;
  }
  for (std::size_t i = 0; i < buffer.samples.size(); ++i) {
    const double s = buffer.samples[i];
    if (mode == NormalizationMode::kAssumePositive && !(s >= 0.0)) {
      throw DomainError("assume-positive normalization: sample " +
                        std::to_string(i) + " is negative (" +
                        std::to_string(s) + ")");
    }
    const double v = out.scale * s + out.offset;
    out.values.push_back(std::clamp(v, 0.0, kMaxEncodable));
  }
  return out;
}

ChunkSet make_chunks(std::span<const double> samples, std::size_t chunk_size,
                     NormalizationMode mode) {
  if (chunk_size < 2 || !std::has_single_bit(chunk_size)) {
    throw ArgumentError("chunk size " + std::to_string(chunk_size) +
                        " is not a power of two >= 2");
  }
  ChunkSet set;
  set.plan.chunk_size = chunk_size;
  set.plan.total_samples = samples.size();
  set.plan.num_chunks = (samples.size() + chunk_size - 1) / chunk_size;
  set.plan.tail_padding = set.plan.num_chunks * chunk_size - samples.size();
  set.plan.normalization_mode = mode;
  set.chunks.reserve(set.plan.num_chunks);
  for (std::size_t c = 0; c < set.plan.num_chunks; ++c) {
    std::vector<Complex> values(chunk_size, Complex{0.0});
    const std::size_t begin = c * chunk_size;
    const std::size_t end = std::min(samples.size(), begin + chunk_size);
    for (std::size_t i = begin; i < end; ++i) values[i - begin] = samples[i];
    FittedSignal fitted = SignalChunk::fit(values, FitMode::kIfNeeded);
    set.plan.scale_factors.push_back(fitted.scale);
    set.chunks.push_back(std::move(fitted.chunk));
  }
  return set;
}

std::vector<double> unchunk(const ChunkSet& set) {
  std::vector<double> out;
  out.reserve(set.plan.num_chunks * set.plan.chunk_size);
  for (std::size_t c = 0; c < set.chunks.size(); ++c) {
    for (const Complex& v : set.chunks[c].values()) {
      out.push_back(v.real() / set.plan.scale_factors[c]);
    }
  }
  out.resize(set.plan.total_samples);
  return out;
}

std::string ChunkMetrics::csv_header() {
  return "chunk_index,shots,seed,rmsd_percent,fidelity_percent,"
         "postselect_probability,scale_f,scale_g";
}

std::string ChunkMetrics::to_csv_row() const {
  return std::to_string(chunk_index) + "," + report.to_csv_row() + "," +
         format_number(scale_f) + "," + format_number(scale_g);
}

QuadOutput process_chunks(const ChunkSet& f, const ChunkSet& g,
                          const ProcessOptions& options) {
  if (f.chunks.size() != g.chunks.size()) {
    throw ShapeError("process_chunks: chunk counts " +
                     std::to_string(f.chunks.size()) + " and " +
                     std::to_string(g.chunks.size()) + " differ");
  }
  if (f.plan.chunk_size != g.plan.chunk_size) {
    throw ShapeError("process_chunks: chunk sizes differ");
  }
  if (options.workers < 1) throw ArgumentError("process_chunks: workers < 1");
  const std::size_t count = f.chunks.size();
  std::vector<std::size_t> schedule = options.schedule;
  if (schedule.empty()) {
    schedule.resize(count);
    for (std::size_t i = 0; i < count; ++i) schedule[i] = i;
  } else {
    std::vector<std::size_t> sorted = schedule;
    std::sort(sorted.begin(), sorted.end());
    bool permutation = sorted.size() == count;
    for (std::size_t i = 0; permutation && i < count; ++i) {
      permutation = sorted[i] == i;
    }
    if (!permutation) {
      throw ArgumentError("process_chunks: schedule is not a permutation");
    }
  }

  auto scale_at = [](const ChunkSet& s, std::size_t i) {
    return i < s.plan.scale_factors.size() ? s.plan.scale_factors[i] : 1.0;
  };

  std::vector<ChunkResult> results(count);
  parallel_for_index(count, options.workers, [&](std::size_t k) {
    const std::size_t i = schedule[k];
    results[i] = process_one(f.chunks[i], g.chunks[i], scale_at(f, i),
                             scale_at(g, i), i, options);
  });

  QuadOutput out;
  const std::size_t N = f.plan.chunk_size;
  for (auto& ch : out.channels) ch.reserve(count * N);
  out.metrics.reserve(count);
  for (ChunkResult& r : results) {
    for (std::size_t k = 0; k < 4; ++k) {
      out.channels[k].insert(out.channels[k].end(), r.channels[k].begin(),
                             r.channels[k].end());
    }
    out.metrics.push_back(r.metrics);
  }
  return out;
}

std::string component_filename(AncillaBits bits) {
  return "component_" + std::to_string(bits.t_f) + std::to_string(bits.t_g) +
         ".wav";
}

double to_audio_range(double value, NormalizationMode mode) {
  return mode == NormalizationMode::kShiftScale ? 2.0 * value - 1.0 : value;
}

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
  const std::filesystem::path probe = dir / ".qpte_write_probe";
  {
    std::ofstream test(probe);
    if (!test) throw IoError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

void write_metrics_csv(const std::filesystem::path& path,
                       std::span<const ChunkMetrics> metrics) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << ChunkMetrics::csv_header() << '\n';
  for (const ChunkMetrics& m : metrics) out << m.to_csv_row() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

void stitch_and_write(const QuadOutput& output, const ChunkPlan& plan,
                      int sample_rate, const std::filesystem::path& out_dir) {
  ensure_output_dir(out_dir);
  for (AncillaBits bits : kAllAncillaPatterns) {
    const std::vector<double>& ch = output.channel(bits);
    AudioBuffer buffer;
    buffer.sample_rate = sample_rate;
    const std::size_t n = std::min(plan.total_samples, ch.size());
    buffer.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      buffer.samples.push_back(to_audio_range(ch[i], plan.normalization_mode));
    }
    write_wav(out_dir / component_filename(bits), buffer);
  }
  write_metrics_csv(out_dir / "metrics.csv", output.metrics);
}

}  // namespace qpte
