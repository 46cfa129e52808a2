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

// Shot sampling, decoding from counts, and accuracy metrics.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpte/ops.hpp"
#include "qpte/statevector.hpp"

namespace qpte {

using Seed = std::uint64_t;

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: draw i is mix64(seed + (i + 1) * golden), so any
/// draw can be produced without the ones before it.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit CounterRng(Seed seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  std::uint64_t next_u64() { return mix64(seed_ + (++counter_) * kGolden); }
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  std::uint64_t counter() const { return counter_; }

 private:
  Seed seed_;
  std::uint64_t counter_;
};

/// Seed for work item `index` under `base`.
constexpr Seed derive_seed(Seed base, std::uint64_t index) {
  return mix64(base ^ mix64(index + CounterRng::kGolden));
}

struct ShotCounts {
  int num_qubits = 0;
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t shots = 0;
  Seed seed = 0;

  std::uint64_t count(std::uint64_t outcome) const {
    const auto it = counts.find(outcome);
    return it == counts.end() ? 0 : it->second;
  }
};

/// Draws `shots` basis states from |amplitude|^2. Throws StateError when the
/// norm is off by more than 1e-6.
ShotCounts sample_counts(const Statevector& state, std::uint64_t shots,
                         Seed seed);

/// Per-index ratio decoding: sqrt(c(x, pattern) / sum_a c(x, a)), or 0 where
/// index x was never observed.
std::vector<double> decode_component(const ShotCounts& counts, int n,
                                     AncillaBits bits);

/// 100 * sqrt(mean((estimate - ideal)^2))
double rmsd_percent(std::span<const double> estimate,
                    std::span<const double> ideal);

/// 100 * (sum_i sqrt(p_i q_i))^2 for two probability vectors.
double distribution_fidelity_percent(std::span<const double> p,
                                     std::span<const double> q);

/// Classical fidelity between the empirical distribution and |ideal|^2.
double fidelity_percent(const ShotCounts& counts, const Statevector& ideal);

struct MetricsReport {
  double rmsd_percent = 0.0;
  double fidelity_percent = 100.0;
  double postselect_probability = 0.0;
  /// nullopt in exact (statevector) mode.
  std::optional<std::uint64_t> shots;
  Seed seed = 0;

  static std::string csv_header();
  /// shots,seed,rmsd_percent,fidelity_percent,postselect_probability
  std::string to_csv_row() const;
};

/// Shared numeric formatting for CSV output.
std::string format_number(double value);

}  // namespace qpte
