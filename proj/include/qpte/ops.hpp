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

// Processing through encoding: pointwise products and convolutions.

#pragma once

#include <span>
#include <vector>

#include "qpte/encoding.hpp"
#include "qpte/statevector.hpp"

namespace qpte {

/// Ancilla readout pattern |t_f t_g>.
struct AncillaBits {
  unsigned t_f = 0;
  unsigned t_g = 0;

  constexpr unsigned offset() const { return 2 * t_f + t_g; }
  friend constexpr bool operator==(AncillaBits, AncillaBits) = default;
};

inline constexpr AncillaBits kAllAncillaPatterns[4] = {
    {0, 0}, {0, 1}, {1, 0}, {1, 1}};

/// State over n+2 qubits:
///   (1/sqrt N) sum_x |x> (fg|00> + f g~|01> + f~ g|10> + f~ g~|11>)
struct ProductState {
  Statevector state;
  QubitLayout layout;
  double scale_f = 1.0;
  double scale_g = 1.0;

  std::size_t index_size() const {
    return std::size_t{1} << layout.register_size();
  }
};

ProductState pointwise_multiply_state(const SignalChunk& f,
                                      const SignalChunk& g,
                                      double scale_f = 1.0,
                                      double scale_g = 1.0);

/// sqrt(N) times the stride-4 slice at 2 t_f + t_g. Pattern (0,0) is f(x)g(x)
/// in the scaled domain; divide by scale_f * scale_g for raw units.
std::vector<Complex> extract_component(const ProductState& p, AncillaBits bits);

/// Probability of reading `bits` on the ancillae.
double postselect_probability(const ProductState& p, AncillaBits bits);

/// O(M^2) DFT with omega = e^{-2 pi i / M}. Forward is unnormalized; the
/// inverse carries 1/M.
std::vector<Complex> classical_dft(std::span<const Complex> signal,
                                   bool inverse = false);

/// Brute-force (f*g)(k) = sum_j f(j) g(k - j mod M). Inputs shorter than M
/// are zero-padded.
std::vector<Complex> classical_circular_convolution(std::span<const Complex> f,
                                                     std::span<const Complex> g,
                                                     std::size_t M);

SignalChunk zero_pad(const SignalChunk& signal, std::size_t M);

struct ConvolveOptions {
  /// Sign convention of the QFT used inside the pipeline. Only differs from
  /// the default for mutation tests.
  FourierSign qft_sign = FourierSign::kNegative;
};

struct ConvolutionResult {
  /// Post-selected register amplitudes, unit L2 norm.
  std::vector<Complex> normalized;
  /// normalized * rescale; equals f*g in the units of the inputs.
  std::vector<Complex> rescaled;
  double rescale = 1.0;
  /// Probability that every post-selection in the pipeline succeeds.
  double success_probability = 0.0;
  /// Renormalization multipliers applied to the encoded spectra (via_theorem:
  /// both; optimized: scale_f is 1 and scale_g belongs to g-hat).
  double scale_f = 1.0;
  double scale_g = 1.0;
  /// State immediately before the final measurement.
  Statevector final_state{1};
  QubitLayout layout;
  /// Pattern the final measurement must post-select on.
  std::vector<Control> postselect_pattern;
};

/// Classical DFTs of both padded inputs, product encoding of the spectra,
/// |00> post-selection, then QFT^dagger on the index register.
ConvolutionResult convolve_via_theorem(const SignalChunk& f,
                                       const SignalChunk& g,
                                       std::size_t pad_to,
                                       const ConvolveOptions& options = {});

/// Encodes f, keeps t_f = 0, QFT, encodes the kernel spectrum on t_g,
/// QFT^dagger, keeps t_g = 0.
ConvolutionResult convolve_optimized(const SignalChunk& f,
                                     const SignalChunk& g_kernel,
                                     std::size_t pad_to,
                                     const ConvolveOptions& options = {});

/// As convolve_optimized with the kernel given by its length-pad_to
/// spectrum g-hat.
ConvolutionResult convolve_optimized_spectrum(
    const SignalChunk& f, std::span<const Complex> g_hat, std::size_t pad_to,
    const ConvolveOptions& options = {});

}  // namespace qpte
