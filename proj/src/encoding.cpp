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

#include "qpte/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qpte/error.hpp"

namespace qpte {

namespace {

constexpr double kMaxMagnitude = 1.0 - kEncodingEpsilon;
// Rounding slack when checking the bound after a rescale.
constexpr double kBoundSlack = 1e-15;

}  // namespace

SignalChunk::SignalChunk(std::vector<Complex> values)
    : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n < 2 || !std::has_single_bit(n)) {
    throw ShapeError("signal chunk length " + std::to_string(n) +
                     " is not a power of two >= 2");
  }
  n_ = std::countr_zero(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (!(std::abs(values_[x]) <= kMaxMagnitude + kBoundSlack)) {
      throw NormalizationError("signal value at index " + std::to_string(x) +
                               " has magnitude above 1 - epsilon");
    }
  }
}

SignalChunk SignalChunk::from_real(std::span<const double> values) {
  return SignalChunk(std::vector<Complex>(values.begin(), values.end()));
}

FittedSignal SignalChunk::fit(std::span<const Complex> values, FitMode mode) {
  double peak = 0.0;
  for (const Complex& v : values) {
    const double a = std::abs(v);
    if (!std::isfinite(a)) throw NormalizationError("signal value not finite");
    peak = std::max(peak, a);
  }
  double scale = 1.0;
  if (peak > 0.0 && (mode == FitMode::kAlways || peak > kMaxMagnitude)) {
    scale = kMaxMagnitude / peak;
  }
  std::vector<Complex> scaled(values.begin(), values.end());
  for (Complex& v : scaled) {
    v *= scale;
    const double a = std::abs(v);
    if (a > kMaxMagnitude) v *= kMaxMagnitude / a;
  }
  return {SignalChunk(std::move(scaled)), scale};
}

bool SignalChunk::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Complex& v) { return v == Complex{0.0}; });
}

double magnitude_angle(Complex value) {
  const double r = std::abs(value);
  if (!(r <= 1.0 + 1e-12)) {
    throw NormalizationError("magnitude_angle: |value| exceeds 1");
  }
  return std::acos(std::min(r, 1.0));
}

Unitary2 build_mu(Complex value) {
  // R_Y(2 theta) with theta = magnitude_angle(value); cos(theta) is |value|
  // itself, which keeps rho_00 exact (and exactly 0 for a zero sample).
  magnitude_angle(value);  // validates the bound
  const double c = std::min(std::abs(value), 1.0);
  const double s = std::sqrt(1.0 - c * c);
  return {c, -s, s, c};
}

Unitary2 build_phi(Complex value) {
  // arg(0) is taken as 0; the |0> amplitude it would multiply is zero anyway.
  const double phase = (value == Complex{0.0}) ? 0.0 : std::arg(value);
  return {std::polar(1.0, phase), 0.0, 0.0, 1.0};
}

Unitary2 build_rho(Complex value) { return build_phi(value) * build_mu(value); }

Circuit encoding_circuit(const QubitLayout& layout, const SignalChunk& signal,
                         int ancilla, EncodingStage stage) {
  const std::size_t n_index = std::size_t{1} << layout.register_size();
  if (signal.size() != n_index || layout.register_size() == 0) {
    throw ShapeError("encoding: signal length " +
                     std::to_string(signal.size()) +
                     " does not match index register of " +
                     std::to_string(layout.register_size()) + " qubits");
  }
  const auto& anc = layout.ancillae();
  if (std::find(anc.begin(), anc.end(), ancilla) == anc.end()) {
    throw ArgumentError("encoding: target is not an ancilla of the layout");
  }

  Circuit circuit;
  circuit.reserve(signal.size());
  for (std::uint64_t x = 0; x < signal.size(); ++x) {
    ControlledGate gate;
    gate.controls = layout.index_controls(x);
    gate.target = ancilla;
    switch (stage) {
      case EncodingStage::kFused:
        gate.u = build_rho(signal[x]);
        gate.label = "rho";
        break;
      case EncodingStage::kMagnitude:
        gate.u = build_mu(signal[x]);
        gate.label = "mu";
        break;
      case EncodingStage::kPhase:
        gate.u = build_phi(signal[x]);
        gate.label = "phi";
        break;
    }
    gate.label += "(" + std::to_string(x) + ")";
    circuit.push_back(std::move(gate));
  }
  return circuit;
}

void apply_circuit(Statevector& state, const Circuit& circuit) {
  for (const ControlledGate& g : circuit) {
    state.apply_controlled_unitary(g.controls, g.target, g.u);
  }
}

std::string describe_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out.precision(12);
  for (const ControlledGate& g : circuit) {
    out << g.label << " target=" << g.target << " controls=";
    for (auto it = g.controls.rbegin(); it != g.controls.rend(); ++it) {
      out << (it->bit ? '1' : '0');
    }
    out << " u00=" << g.u(0, 0).real() << (g.u(0, 0).imag() < 0 ? "" : "+")
        << g.u(0, 0).imag() << "i\n";
  }
  return out.str();
}

void encode_function(Statevector& state, const QubitLayout& layout,
                     const SignalChunk& signal, int ancilla) {
  if (layout.num_qubits() != state.num_qubits()) {
    throw ShapeError("encoding: layout does not cover the statevector");
  }
  apply_circuit(state, encoding_circuit(layout, signal, ancilla));
}

}  // namespace qpte
