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

// Function encoding onto an ancilla qubit.
//
// For a register in uniform superposition, applying rho_f(x) to the ancilla
// conditioned on each |x> yields
//
//   (1/sqrt N) sum_x |x> (f(x)|0> + sqrt(1 - |f(x)|^2)|1>)
//
// rho_f(x) = phi_f(x) * mu_f(x), where mu is the real R_Y rotation carrying
// the magnitude and phi = diag(e^{i arg f(x)}, 1) carries the phase on |0>.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qpte/statevector.hpp"

namespace qpte {

/// Values must stay at or below 1 - kEncodingEpsilon in magnitude so the
/// complement amplitude stays strictly positive.
inline constexpr double kEncodingEpsilon = 1e-9;

/// How SignalChunk::fit treats inputs that are already encodable.
enum class FitMode {
  kIfNeeded,  ///< scale only when max |v| > 1 - epsilon
  kAlways,    ///< always scale so that max |v| = 1 - epsilon
};

struct FittedSignal;

/// Finite function {0..N-1} -> C with N = 2^n >= 2 and |f| <= 1 - epsilon.
class SignalChunk {
 public:
  /// Throws ShapeError on a bad length and NormalizationError on a value
  /// above the encodable bound.
  explicit SignalChunk(std::vector<Complex> values);
  static SignalChunk from_real(std::span<const double> values);

  /// Scales arbitrary values into the encodable disk.
  static FittedSignal fit(std::span<const Complex> values,
                          FitMode mode = FitMode::kIfNeeded);

  std::size_t size() const { return values_.size(); }
  int num_index_qubits() const { return n_; }
  std::span<const Complex> values() const { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  bool is_zero() const;

 private:
  std::vector<Complex> values_;
  int n_ = 0;
};

/// A chunk plus the multiplier that was applied to the raw values
/// (chunk = scale * raw).
struct FittedSignal {
  SignalChunk chunk;
  double scale = 1.0;
};

/// arccos(|value|), in [0, pi/2].
double magnitude_angle(Complex value);

Unitary2 build_mu(Complex value);
Unitary2 build_phi(Complex value);
Unitary2 build_rho(Complex value);

/// One multi-controlled single-qubit gate.
struct ControlledGate {
  std::vector<Control> controls;
  int target = 0;
  Unitary2 u;
  std::string label;
};

using Circuit = std::vector<ControlledGate>;

enum class EncodingStage {
  kFused,      ///< rho_f(x) per index
  kMagnitude,  ///< mu_f(x) per index
  kPhase,      ///< phi_f(x) per index
};

/// Controlled value-setting gates for `signal`, x ascending.
Circuit encoding_circuit(const QubitLayout& layout, const SignalChunk& signal,
                         int ancilla, EncodingStage stage = EncodingStage::kFused);

void apply_circuit(Statevector& state, const Circuit& circuit);

/// One line per gate: label, target, control pattern (q_{n-1}..q_0).
std::string describe_circuit(const Circuit& circuit);

/// Encodes `signal` onto `ancilla` with the fused rho gates. The register
/// size of `layout` must match the signal length.
void encode_function(Statevector& state, const QubitLayout& layout,
                     const SignalChunk& signal, int ancilla);

}  // namespace qpte
