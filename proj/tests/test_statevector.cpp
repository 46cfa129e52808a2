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

#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "qpte/error.hpp"
#include "qpte/ops.hpp"

namespace qpte {
namespace {

std::vector<int> all_positions(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

TEST(Statevector, InitZeroState) {
  Statevector s1 = init_zero_state(1);
  EXPECT_EQ(s1.size(), 2u);
  EXPECT_EQ(s1[0], Complex(1.0));
  EXPECT_EQ(s1[1], Complex(0.0));

  Statevector s2 = init_zero_state(2);
  ASSERT_EQ(s2.size(), 4u);
  EXPECT_EQ(s2[0], Complex(1.0));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(s2[i], Complex(0.0));
}

TEST(Statevector, QubitCeiling) {
  EXPECT_THROW(init_zero_state(31), ResourceError);
  EXPECT_THROW(init_zero_state(0), ResourceError);
  EXPECT_THROW(init_zero_state(5, 4), ResourceError);
  EXPECT_NO_THROW(init_zero_state(4, 4));
}

TEST(Statevector, HadamardSingleQubit) {
  Statevector s(1);
  const std::vector<int> q{0};
  s.apply_hadamard_layer(q);
  EXPECT_NEAR(s[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Statevector, HadamardUniformSuperposition) {
  Statevector s(3);
  s.apply_hadamard_layer(all_positions(3));
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(std::abs(s[i] - Complex(1.0 / std::sqrt(8.0))), 0.0, 1e-15);
  }
}

TEST(Statevector, HadamardSelfInverseMatchesMatrixOracle) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 5; ++n) {
    const auto psi = oracle::random_state(rng, n);
    Statevector s = Statevector::from_amplitudes(psi);
    const auto qubits = all_positions(n);
    s.apply_hadamard_layer(qubits);

    std::vector<Complex> expected = psi;
    for (int q : qubits) {
      expected = oracle::apply(
          oracle::controlled_matrix(n, {}, q, gates::hadamard()), expected);
    }
    EXPECT_LT(oracle::max_abs_diff(s.amplitudes(), expected), 1e-12);

    s.apply_hadamard_layer(qubits);
    EXPECT_LT(oracle::max_abs_diff(s.amplitudes(), psi), 1e-12);
  }
}

TEST(Statevector, HadamardRejectsBadPositions) {
  Statevector s(2);
  const std::vector<int> dup{0, 0};
  const std::vector<int> out{2};
  EXPECT_THROW(s.apply_hadamard_layer(dup), ArgumentError);
  EXPECT_THROW(s.apply_hadamard_layer(out), ArgumentError);
}

TEST(Statevector, CnotTruthTable) {
  // Layout q0 then t: q0 is bit 1, t is bit 0.
  const QubitLayout layout = QubitLayout::standard(1, 1);
  Statevector s = Statevector::from_amplitudes({1.0, 2.0, 3.0, 4.0});
  const std::vector<Control> c{{layout.index_register()[0], 1}};
  s.apply_controlled_unitary(c, layout.ancilla(0), gates::pauli_x());
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_EQ(s[1], Complex(2.0));
  EXPECT_EQ(s[2], Complex(4.0));
  EXPECT_EQ(s[3], Complex(3.0));
}

TEST(Statevector, NegatedControlsOnlyTouchZeroBlock) {
  const QubitLayout layout = QubitLayout::standard(2, 1);
  Statevector s(3);
  s.apply_hadamard_layer(layout.index_register());
  const auto before = std::vector<Complex>(s.amplitudes().begin(),
                                           s.amplitudes().end());
  s.apply_controlled_unitary(layout.index_controls(0), layout.ancilla(0),
                             gates::pauli_x());
  // x = 0 block is offsets 0 and 1; swapped.
  EXPECT_EQ(s[0], before[1]);
  EXPECT_EQ(s[1], before[0]);
  for (std::size_t i = 2; i < 8; ++i) EXPECT_EQ(s[i], before[i]);
}

TEST(Statevector, ControlledUnitaryMatchesKroneckerOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 30; ++trial) {
      // Random unitary: phase * R_Y * phase.
      const double a = angle(rng), b = angle(rng), c = angle(rng);
      const Unitary2 v = gates::phase(a) *
                         Unitary2{std::cos(b), -std::sin(b), std::sin(b),
                                  std::cos(b)} *
                         gates::phase(c);
      std::uniform_int_distribution<int> pick(0, n - 1);
      const int target = pick(rng);
      std::vector<Control> controls;
      for (int p = 0; p < n; ++p) {
        if (p == target) continue;
        const int choice = static_cast<int>(rng() % 3);  // absent, 0, 1
        if (choice > 0) controls.push_back({p, choice - 1});
      }
      const auto psi = oracle::random_state(rng, n);
      Statevector s = Statevector::from_amplitudes(psi);
      s.apply_controlled_unitary(controls, target, v);
      const auto expected = oracle::apply(
          oracle::controlled_matrix(n, controls, target, v), psi);
      ASSERT_LT(oracle::max_abs_diff(s.amplitudes(), expected), 1e-12)
          << "n=" << n << " trial=" << trial;
      ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
    }
  }
}

TEST(Statevector, ControlledUnitaryErrors) {
  Statevector s(2);
  const std::vector<Control> on_target{{0, 1}};
  EXPECT_THROW(s.apply_controlled_unitary(on_target, 0, gates::pauli_x()),
               ArgumentError);
  const Unitary2 not_unitary{1.0, 1.0, 0.0, 1.0};
  EXPECT_THROW(s.apply_controlled_unitary({}, 0, not_unitary), ArgumentError);
  EXPECT_THROW(s.apply_controlled_unitary({}, 2, gates::pauli_x()),
               ArgumentError);
}

TEST(Statevector, QftOfDeltaIsUniform) {
  for (int m = 1; m <= 5; ++m) {
    Statevector s(m);
    s.apply_qft(all_positions(m), false);
    const double expected = 1.0 / std::sqrt(static_cast<double>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_LT(std::abs(s[i] - Complex(expected)), 1e-12);
    }
  }
}

TEST(Statevector, QftMatchesScaledClassicalDft) {
  std::mt19937_64 rng(8);
  for (int m = 1; m <= 4; ++m) {
    const std::size_t M = std::size_t{1} << m;
    for (int trial = 0; trial < 20; ++trial) {
      const auto c = oracle::random_state(rng, m);
      Statevector s = Statevector::from_amplitudes(c);
      s.apply_qft(all_positions(m), false);
      auto expected = classical_dft(c);
      for (auto& v : expected) v /= std::sqrt(static_cast<double>(M));
      ASSERT_LT(oracle::max_abs_diff(s.amplitudes(), expected), 1e-12);
    }
  }
}

TEST(Statevector, QftRoundTripOnRandomStates) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 10;
    const auto psi = oracle::random_state(rng, n);
    Statevector s = Statevector::from_amplitudes(psi);
    s.apply_qft(all_positions(n), false);
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
    s.apply_qft(all_positions(n), true);
    ASSERT_LT(oracle::max_abs_diff(s.amplitudes(), psi), 1e-12) << "n=" << n;
  }
}

TEST(Statevector, QftActsOnRegisterFactorOnly) {
  // Register of 3 qubits above one ancilla; each ancilla branch is
  // transformed independently.
  std::mt19937_64 rng(5);
  const QubitLayout layout = QubitLayout::standard(3, 1);
  const auto psi = oracle::random_state(rng, 4);
  Statevector s = Statevector::from_amplitudes(psi);
  s.apply_qft(layout.index_register(), false);
  for (unsigned a = 0; a < 2; ++a) {
    std::vector<Complex> branch(8);
    for (std::size_t x = 0; x < 8; ++x) branch[x] = psi[2 * x + a];
    auto expected = classical_dft(branch);
    for (std::size_t x = 0; x < 8; ++x) {
      EXPECT_LT(std::abs(s[2 * x + a] - expected[x] / std::sqrt(8.0)), 1e-12);
    }
  }
}

TEST(Statevector, InnerProduct) {
  const Statevector zero(1);
  Statevector one(1);
  one.apply_controlled_unitary({}, 0, gates::pauli_x());
  EXPECT_EQ(inner_product(zero, one), Complex(0.0));
  EXPECT_NEAR(std::abs(inner_product(zero, zero) - 1.0), 0.0, 1e-15);

  std::mt19937_64 rng(3);
  const auto a = oracle::random_state(rng, 4);
  const auto b = oracle::random_state(rng, 4);
  Complex naive{0.0};
  for (std::size_t i = 0; i < a.size(); ++i) naive += std::conj(a[i]) * b[i];
  const Complex got = inner_product(Statevector::from_amplitudes(a),
                                    Statevector::from_amplitudes(b));
  EXPECT_LT(std::abs(got - naive), 1e-14);
  EXPECT_NEAR(std::abs(inner_product(Statevector::from_amplitudes(a),
                                     Statevector::from_amplitudes(a))),
              1.0, 1e-14);
  EXPECT_THROW(inner_product(Statevector(1), Statevector(2)), ArgumentError);
}

TEST(Statevector, NormPreservedAcrossMixedSequence) {
  std::mt19937_64 rng(77);
  const int n = 6;
  Statevector s = Statevector::from_amplitudes(oracle::random_state(rng, n));
  const auto qubits = all_positions(n);
  for (int step = 0; step < 200; ++step) {
    switch (step % 3) {
      case 0:
        s.apply_hadamard_layer(std::span<const int>(qubits).subspan(0, 3));
        break;
      case 1: {
        const std::vector<Control> c{{1, 0}, {4, 1}};
        s.apply_controlled_unitary(c, 2, gates::phase(0.1 * step));
        break;
      }
      default:
        s.apply_qft(std::span<const int>(qubits).subspan(2, 4), step % 2 == 0);
    }
  }
  EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-10);
}

TEST(Statevector, PostselectRenormalizes) {
  Statevector s(2);
  s.apply_hadamard_layer(all_positions(2));
  const std::vector<Control> pattern{{0, 1}};
  EXPECT_NEAR(s.postselect(pattern), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s[0], Complex(0.0));
  const std::vector<Control> impossible{{0, 0}};
  EXPECT_THROW(s.postselect(impossible), StateError);
}

TEST(Unitary2, AdjointAndProduct) {
  const Unitary2 h = gates::hadamard();
  EXPECT_LT((h * h).unitarity_error(), 1e-15);
  const Unitary2 p = gates::phase(0.3);
  const Unitary2 id = p * p.adjoint();
  EXPECT_LT(std::abs(id(0, 0) - 1.0) + std::abs(id(1, 1) - 1.0), 1e-15);
}

}  // namespace
}  // namespace qpte
