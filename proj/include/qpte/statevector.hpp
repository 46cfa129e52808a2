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

// Dense statevector engine.
//
// Bit layout: a qubit "position" p is bit p of the basis-state integer, so
// position 0 is the least significant bit. QubitLayout places the ancillae
// in the low bits and the index register above them:
//
//   basis = x * 2^A + a
//
// where x is the index-register value (q_j is bit j of x) and a holds the
// ancilla bits with the first-listed ancilla (t_f) most significant. With two
// ancillae the amplitude of |x>|t_f t_g> lives at offset 4x + 2 t_f + t_g.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qpte {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 30;

/// 2x2 complex matrix, row major.
struct Unitary2 {
  std::array<Complex, 4> m{Complex{1.0}, Complex{0.0}, Complex{0.0},
                           Complex{1.0}};

  constexpr Unitary2() = default;
  constexpr Unitary2(Complex a00, Complex a01, Complex a10, Complex a11)
      : m{a00, a01, a10, a11} {}

  const Complex& operator()(int row, int col) const { return m[2 * row + col]; }
  Complex& operator()(int row, int col) { return m[2 * row + col]; }

  Unitary2 adjoint() const;
  /// Max entrywise deviation of U * U^dagger from the identity.
  double unitarity_error() const;
  bool is_unitary(double tol = 1e-9) const { return unitarity_error() <= tol; }

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);
};

namespace gates {
Unitary2 hadamard();
Unitary2 pauli_x();
/// diag(1, e^{i angle})
Unitary2 phase(double angle);
}  // namespace gates

/// Control requirement: the qubit at `position` must read `bit`.
struct Control {
  int position = 0;
  int bit = 1;
};

/// Which sign the forward Fourier transform uses in its root of unity.
/// kNegative is omega = e^{-2 pi i / M}, matching classical_dft.
enum class FourierSign { kNegative, kPositive };

class QubitLayout {
 public:
  /// Index register of `register_size` qubits above `num_ancillae` ancillae
  /// in the low bits.
  static QubitLayout standard(int register_size, int num_ancillae);

  int num_qubits() const {
    return static_cast<int>(index_register_.size() + ancillae_.size());
  }
  int register_size() const { return static_cast<int>(index_register_.size()); }
  int num_ancillae() const { return static_cast<int>(ancillae_.size()); }
  /// q_0 ... q_{n-1}; q_j is bit j of the index value.
  const std::vector<int>& index_register() const { return index_register_; }
  /// t, or t_f then t_g.
  const std::vector<int>& ancillae() const { return ancillae_; }
  int ancilla(int k) const { return ancillae_.at(static_cast<std::size_t>(k)); }

  /// Controls that select index-register basis state |x>.
  std::vector<Control> index_controls(std::uint64_t x) const;

 private:
  std::vector<int> index_register_;
  std::vector<int> ancillae_;
};

class Statevector {
 public:
  /// |0...0> on `num_qubits` qubits. Throws ResourceError outside
  /// [1, max_qubits].
  explicit Statevector(int num_qubits, int max_qubits = kDefaultMaxQubits);

  /// Adopts the given amplitudes; length must be a power of two >= 2.
  static Statevector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm_squared() const;
  void normalize();
  std::vector<double> probabilities() const;

  void apply_hadamard_layer(std::span<const int> qubits);

  /// Multiplies each (target=0, target=1) amplitude pair whose control bits
  /// match by `u`. Empty `controls` is an unconditional gate.
  void apply_controlled_unitary(std::span<const Control> controls, int target,
                                const Unitary2& u);

  /// Quantum Fourier transform on `reg` (reg[j] holds bit j of the register
  /// value), built from Hadamards, controlled phases and swaps. Forward maps
  /// c(y) -> sum_y c(y) omega^{xy} / sqrt(M).
  void apply_qft(std::span<const int> reg, bool inverse,
                 FourierSign sign = FourierSign::kNegative);

  /// Projects onto the basis states matching `pattern` and renormalizes.
  /// Returns the probability of the pattern. Throws StateError when it is 0.
  double postselect(std::span<const Control> pattern);

 private:
  Statevector() = default;
  void check_position(int p) const;
  void apply_swap(int a, int b);

  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

inline Statevector init_zero_state(int num_qubits,
                                   int max_qubits = kDefaultMaxQubits) {
  return Statevector(num_qubits, max_qubits);
}

/// sum_i conj(a_i) b_i
Complex inner_product(const Statevector& a, const Statevector& b);

}  // namespace qpte
