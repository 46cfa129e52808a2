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

#include "qpte/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <new>
#include <numbers>
#include <string>

#include "qpte/error.hpp"

namespace qpte {

Unitary2 Unitary2::adjoint() const {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

double Unitary2::unitarity_error() const {
  const Unitary2 p = *this * adjoint();
  double err = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Complex expected = (r == c) ? Complex{1.0} : Complex{0.0};
      err = std::max(err, std::abs(p(r, c) - expected));
    }
  }
  return err;
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
  Unitary2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
    }
  }
  return out;
}

namespace gates {

Unitary2 hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {s, s, s, -s};
}

Unitary2 pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

Unitary2 phase(double angle) {
  return {1.0, 0.0, 0.0, std::polar(1.0, angle)};
}

}  // namespace gates

QubitLayout QubitLayout::standard(int register_size, int num_ancillae) {
  if (register_size < 0 || num_ancillae < 0) {
    throw ArgumentError("QubitLayout: negative register or ancilla count");
  }
  QubitLayout layout;
  for (int k = 0; k < num_ancillae; ++k) {
    layout.ancillae_.push_back(num_ancillae - 1 - k);
  }
  for (int j = 0; j < register_size; ++j) {
    layout.index_register_.push_back(num_ancillae + j);
  }
  return layout;
}

std::vector<Control> QubitLayout::index_controls(std::uint64_t x) const {
  std::vector<Control> controls;
  controls.reserve(index_register_.size());
  for (std::size_t j = 0; j < index_register_.size(); ++j) {
    controls.push_back({index_register_[j], static_cast<int>((x >> j) & 1U)});
  }
  return controls;
}

Statevector::Statevector(int num_qubits, int max_qubits) {
  if (num_qubits < 1 || num_qubits > max_qubits) {
    throw ResourceError("statevector: " + std::to_string(num_qubits) +
                        " qubits is outside [1, " + std::to_string(max_qubits) +
                        "]");
  }
  try {
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0});
  } catch (const std::bad_alloc&) {
    throw ResourceError("statevector: cannot allocate " +
                        std::to_string(num_qubits) + " qubits");
  }
  num_qubits_ = num_qubits;
  amplitudes_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t n = amplitudes.size();
  if (n < 2 || !std::has_single_bit(n)) {
    throw ShapeError("statevector: amplitude count " + std::to_string(n) +
                     " is not a power of two >= 2");
  }
  Statevector s;
  s.num_qubits_ = std::countr_zero(n);
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

double Statevector::norm_squared() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return sum;
}

void Statevector::normalize() {
  const double norm = std::sqrt(norm_squared());
  if (norm == 0.0) throw StateError("statevector: cannot normalize zero state");
  for (Complex& a : amplitudes_) a /= norm;
}

std::vector<double> Statevector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Complex& a) { return std::norm(a); });
  return p;
}

void Statevector::check_position(int p) const {
  if (p < 0 || p >= num_qubits_) {
    throw ArgumentError("qubit position " + std::to_string(p) +
                        " out of range for " + std::to_string(num_qubits_) +
                        " qubits");
  }
}

void Statevector::apply_hadamard_layer(std::span<const int> qubits) {
  std::uint64_t seen = 0;
  for (int q : qubits) {
    check_position(q);
    if (seen & (std::uint64_t{1} << q)) {
      throw ArgumentError("hadamard layer: duplicate position " +
                          std::to_string(q));
    }
    seen |= std::uint64_t{1} << q;
  }
  const Unitary2 h = gates::hadamard();
  for (int q : qubits) apply_controlled_unitary({}, q, h);
}

void Statevector::apply_controlled_unitary(std::span<const Control> controls,
                                           int target, const Unitary2& u) {
  check_position(target);
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  for (const Control& c : controls) {
    check_position(c.position);
    if (c.position == target) {
      throw ArgumentError("controlled unitary: target among controls");
    }
    if (c.bit != 0 && c.bit != 1) {
      throw ArgumentError("controlled unitary: control bit must be 0 or 1");
    }
    const std::uint64_t b = std::uint64_t{1} << c.position;
    if (mask & b) {
      throw ArgumentError("controlled unitary: duplicate control position");
    }
    mask |= b;
    if (c.bit) value |= b;
  }
  if (!u.is_unitary(1e-9)) {
    throw ArgumentError("controlled unitary: matrix is not unitary");
  }

  const std::uint64_t tbit = std::uint64_t{1} << target;
  const std::uint64_t dim = amplitudes_.size();
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & tbit) || (i & mask) != value) continue;
    Complex& a0 = amplitudes_[i];
    Complex& a1 = amplitudes_[i | tbit];
    const Complex v0 = a0;
    const Complex v1 = a1;
    a0 = u00 * v0 + u01 * v1;
    a1 = u10 * v0 + u11 * v1;
  }
}

void Statevector::apply_swap(int a, int b) {
  const Unitary2 x = gates::pauli_x();
  const Control ca{a, 1};
  const Control cb{b, 1};
  apply_controlled_unitary({&ca, 1}, b, x);
  apply_controlled_unitary({&cb, 1}, a, x);
  apply_controlled_unitary({&ca, 1}, b, x);
}

void Statevector::apply_qft(std::span<const int> reg, bool inverse,
                            FourierSign sign) {
  std::uint64_t seen = 0;
  for (int q : reg) {
    check_position(q);
    if (seen & (std::uint64_t{1} << q)) {
      throw ArgumentError("qft: duplicate register position");
    }
    seen |= std::uint64_t{1} << q;
  }
  const int m = static_cast<int>(reg.size());
  if (m == 0) return;

  // Textbook circuit produces e^{+2 pi i xy / M}; the sign flips every
  // controlled-phase angle. The adjoint reverses the sequence and conjugates.
  const double s = (sign == FourierSign::kNegative ? -1.0 : 1.0) *
                   (inverse ? -1.0 : 1.0);
  const Unitary2 h = gates::hadamard();

  auto cphase = [&](int control, int target, int distance) {
    const Control c{reg[static_cast<std::size_t>(control)], 1};
    apply_controlled_unitary(
        {&c, 1}, reg[static_cast<std::size_t>(target)],
        gates::phase(s * std::numbers::pi / std::ldexp(1.0, distance)));
  };
  auto reverse_bits = [&] {
    for (int i = 0; i < m / 2; ++i) {
      apply_swap(reg[static_cast<std::size_t>(i)],
                 reg[static_cast<std::size_t>(m - 1 - i)]);
    }
  };

  if (!inverse) {
    for (int j = m - 1; j >= 0; --j) {
      apply_controlled_unitary({}, reg[static_cast<std::size_t>(j)], h);
      for (int k = j - 1; k >= 0; --k) cphase(k, j, j - k);
    }
    reverse_bits();
  } else {
    reverse_bits();
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < j; ++k) cphase(k, j, j - k);
      apply_controlled_unitary({}, reg[static_cast<std::size_t>(j)], h);
    }
  }
}

double Statevector::postselect(std::span<const Control> pattern) {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  for (const Control& c : pattern) {
    check_position(c.position);
    mask |= std::uint64_t{1} << c.position;
    if (c.bit) value |= std::uint64_t{1} << c.position;
  }
  double prob = 0.0;
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if ((i & mask) == value) {
      prob += std::norm(amplitudes_[i]);
    } else {
      amplitudes_[i] = 0.0;
    }
  }
  // Below this the surviving amplitudes are rounding residue, not signal.
  constexpr double kMinProbability = 1e-24;
  if (!(prob > kMinProbability)) {
    throw StateError("post-selection pattern has zero probability");
  }
  const double scale = 1.0 / std::sqrt(prob);
  for (Complex& a : amplitudes_) a *= scale;
  return prob;
}

Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw ArgumentError("inner product: dimension mismatch");
  }
  Complex sum{0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

}  // namespace qpte
