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

#include "qpte/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qpte/error.hpp"

namespace qpte {

ShotCounts sample_counts(const Statevector& state, std::uint64_t shots,
                         Seed seed) {
  if (shots < 1) throw ArgumentError("sample_counts: shots must be >= 1");
  const double norm = state.norm_squared();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw StateError("sample_counts: state is not normalized");
  }

  std::vector<double> cdf(state.size());
  double running = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    running += std::norm(state[i]);
    cdf[i] = running;
  }

  // Dense tallies, folded into the sparse map at the end.
  std::vector<std::uint64_t> tally(state.size(), 0);
  CounterRng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.next_unit() * running;
    // First cdf entry strictly above u; never a zero-probability outcome.
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx == cdf.size()) {
      idx = cdf.size() - 1;
      while (idx > 0 && std::norm(state[idx]) == 0.0) --idx;
    }
    ++tally[idx];
  }

  ShotCounts out;
  out.num_qubits = state.num_qubits();
  out.shots = shots;
  out.seed = seed;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (tally[i] != 0) out.counts.emplace(i, tally[i]);
  }
  return out;
}

std::vector<double> decode_component(const ShotCounts& counts, int n,
                                     AncillaBits bits) {
  if (counts.num_qubits != n + 2) {
    throw ShapeError("decode_component: counts span " +
                     std::to_string(counts.num_qubits) + " qubits, expected " +
                     std::to_string(n + 2));
  }
  const std::size_t N = std::size_t{1} << n;
  std::vector<double> row_total(N, 0.0);
  std::vector<double> hit(N, 0.0);
  for (const auto& [outcome, c] : counts.counts) {
    const std::size_t x = outcome >> 2;
    row_total[x] += static_cast<double>(c);
    if ((outcome & 3U) == bits.offset()) hit[x] += static_cast<double>(c);
  }
  std::vector<double> estimate(N, 0.0);
  for (std::size_t x = 0; x < N; ++x) {
    if (row_total[x] > 0.0) estimate[x] = std::sqrt(hit[x] / row_total[x]);
  }
  return estimate;
}

double rmsd_percent(std::span<const double> estimate,
                    std::span<const double> ideal) {
  if (estimate.size() != ideal.size()) {
    throw ShapeError("rmsd: length mismatch");
  }
  if (estimate.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < estimate.size(); ++i) {
    const double d = estimate[i] - ideal[i];
    sum += d * d;
  }
  return 100.0 * std::sqrt(sum / static_cast<double>(estimate.size()));
}

double distribution_fidelity_percent(std::span<const double> p,
                                     std::span<const double> q) {
  if (p.size() != q.size()) throw ShapeError("fidelity: dimension mismatch");
  double overlap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    overlap += std::sqrt(std::max(p[i], 0.0) * std::max(q[i], 0.0));
  }
  return std::min(100.0, 100.0 * overlap * overlap);
}

double fidelity_percent(const ShotCounts& counts, const Statevector& ideal) {
  if (counts.num_qubits != ideal.num_qubits()) {
    throw ShapeError("fidelity: counts and state dimensions differ");
  }
  std::vector<double> q(ideal.size(), 0.0);
  const double total = static_cast<double>(counts.shots);
  if (total > 0.0) {
    for (const auto& [outcome, c] : counts.counts) {
      q[outcome] = static_cast<double>(c) / total;
    }
  }
  return distribution_fidelity_percent(ideal.probabilities(), q);
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string MetricsReport::csv_header() {
  return "shots,seed,rmsd_percent,fidelity_percent,postselect_probability";
}

std::string MetricsReport::to_csv_row() const {
  std::string row = shots ? std::to_string(*shots) : std::string("exact");
  row += "," + std::to_string(seed);
  row += "," + format_number(rmsd_percent);
  row += "," + format_number(fidelity_percent);
  row += "," + format_number(postselect_probability);
  return row;
}

}  // namespace qpte
