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

// Test-only reference implementations. None of these go through the
// statevector engine; they are written from the closed-form definitions.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "qpte/statevector.hpp"

namespace qpte::oracle {

using Matrix = std::vector<std::vector<Complex>>;

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t ra = a.size(), rb = b.size();
  Matrix out(ra * rb, std::vector<Complex>(ra * rb, 0.0));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < rb; ++l)
          out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
  return out;
}

inline Matrix to_matrix(const Unitary2& u) {
  return {{u(0, 0), u(0, 1)}, {u(1, 0), u(1, 1)}};
}

inline Matrix projector(int bit) {
  Matrix p{{0.0, 0.0}, {0.0, 0.0}};
  p[bit][bit] = 1.0;
  return p;
}

/// I - P_controls (x) I_target + P_controls (x) U_target, built as Kronecker
/// products with qubit n-1 as the leftmost (most significant) factor.
inline Matrix controlled_matrix(int num_qubits, std::span<const Control> controls,
                                int target, const Unitary2& u) {
  Matrix with_u{{1.0}};
  Matrix with_id{{1.0}};
  for (int p = num_qubits - 1; p >= 0; --p) {
    Matrix fu = identity(2);
    Matrix fi = identity(2);
    if (p == target) {
      fu = to_matrix(u);
    } else {
      for (const Control& c : controls) {
        if (c.position == p) {
          fu = projector(c.bit);
          fi = projector(c.bit);
        }
      }
    }
    with_u = kron(with_u, fu);
    with_id = kron(with_id, fi);
  }
  Matrix out = identity(std::size_t{1} << num_qubits);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j)
      out[i][j] += with_u[i][j] - with_id[i][j];
  return out;
}

inline std::vector<Complex> apply(const Matrix& m, std::span<const Complex> v) {
  std::vector<Complex> out(v.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline std::vector<Complex> random_state(std::mt19937_64& rng, int num_qubits) {
  std::vector<Complex> v(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (auto& c : v) {
    c = random_complex(rng);
    norm += std::norm(c);
  }
  for (auto& c : v) c /= std::sqrt(norm);
  return v;
}

/// Uniform in the disk of radius `max_r`.
inline std::vector<Complex> random_signal(std::mt19937_64& rng, std::size_t n,
                                          double max_r = 1.0 - 1e-9) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> v(n);
  for (auto& c : v) {
    c = std::polar(max_r * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
  }
  return v;
}

inline std::vector<double> random_positive(std::mt19937_64& rng, std::size_t n,
                                           double lo = 0.0, double hi = 0.999) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Amplitude of |x>|t_f t_g> in the two-ancilla product state, straight from
/// the closed form.
inline Complex product_amplitude(std::span<const Complex> f,
                                 std::span<const Complex> g, std::size_t x,
                                 unsigned t_f, unsigned t_g) {
  const double inv_root_n = 1.0 / std::sqrt(static_cast<double>(f.size()));
  const Complex ff = t_f ? Complex{std::sqrt(1.0 - std::norm(f[x]))} : f[x];
  const Complex gg = t_g ? Complex{std::sqrt(1.0 - std::norm(g[x]))} : g[x];
  return inv_root_n * ff * gg;
}

/// Direct linear convolution, length a.size() + b.size() - 1.
inline std::vector<Complex> linear_convolution(std::span<const Complex> a,
                                               std::span<const Complex> b) {
  std::vector<Complex> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// L2 distance between a/||a|| and b/||b||. Small only when the vectors agree
/// up to a single positive scale.
inline double relative_l2_after_normalizing(std::span<const Complex> a,
                                            std::span<const Complex> b) {
  double na = 0.0, nb = 0.0;
  for (const auto& c : a) na += std::norm(c);
  for (const auto& c : b) nb += std::norm(c);
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] / na - b[i] / nb);
  return std::sqrt(d);
}

inline double relative_l2(std::span<const Complex> a, std::span<const Complex> ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace qpte::oracle
