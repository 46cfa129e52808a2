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

#include "qpte/ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qpte/error.hpp"

namespace qpte {

namespace {

// Amplitudes of |x>|a> for every x, where a is the ancilla offset.
std::vector<Complex> register_slice(const Statevector& s, int num_ancillae,
                                    unsigned offset) {
  const std::size_t stride = std::size_t{1} << num_ancillae;
  std::vector<Complex> out(s.size() / stride);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = s[x * stride + offset];
  return out;
}

void check_pad(std::size_t pad_to, std::size_t f_len, std::size_t g_len) {
  if (pad_to < 2 || !std::has_single_bit(pad_to)) {
    throw ArgumentError("convolution: pad length " + std::to_string(pad_to) +
                        " is not a power of two >= 2");
  }
  if (f_len > pad_to || g_len > pad_to) {
    throw ArgumentError("convolution: pad length shorter than an input");
  }
}

std::vector<Complex> padded(std::span<const Complex> v, std::size_t M) {
  std::vector<Complex> out(M, Complex{0.0});
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

ProductState pointwise_multiply_state(const SignalChunk& f,
                                      const SignalChunk& g, double scale_f,
                                      double scale_g) {
  if (f.size() != g.size()) {
    throw ShapeError("pointwise multiply: lengths " + std::to_string(f.size()) +
                     " and " + std::to_string(g.size()) + " differ");
  }
  const int n = f.num_index_qubits();
  ProductState p{Statevector(n + 2), QubitLayout::standard(n, 2), scale_f,
                 scale_g};
  p.state.apply_hadamard_layer(p.layout.index_register());
  encode_function(p.state, p.layout, f, p.layout.ancilla(0));
  encode_function(p.state, p.layout, g, p.layout.ancilla(1));
  return p;
}

std::vector<Complex> extract_component(const ProductState& p,
                                       AncillaBits bits) {
  std::vector<Complex> out = register_slice(p.state, 2, bits.offset());
  const double root_n = std::sqrt(static_cast<double>(out.size()));
  for (Complex& c : out) c *= root_n;
  return out;
}

double postselect_probability(const ProductState& p, AncillaBits bits) {
  double prob = 0.0;
  for (std::size_t i = bits.offset(); i < p.state.size(); i += 4) {
    prob += std::norm(p.state[i]);
  }
  return prob;
}

std::vector<Complex> classical_dft(std::span<const Complex> signal,
                                   bool inverse) {
  const std::size_t M = signal.size();
  std::vector<Complex> out(M, Complex{0.0});
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t x = 0; x < M; ++x) {
    Complex sum{0.0};
    for (std::size_t y = 0; y < M; ++y) {
      // Reduce the exponent mod M before forming the angle.
      const std::size_t k = (x * y) % M;
      sum += signal[y] *
             std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                 static_cast<double>(k) /
                                 static_cast<double>(M));
    }
    out[x] = inverse ? sum / static_cast<double>(M) : sum;
  }
  return out;
}

std::vector<Complex> classical_circular_convolution(std::span<const Complex> f,
                                                     std::span<const Complex> g,
                                                     std::size_t M) {
  if (f.size() > M || g.size() > M) {
    throw ShapeError("circular convolution: input longer than M");
  }
  const std::vector<Complex> fp = padded(f, M);
  const std::vector<Complex> gp = padded(g, M);
  std::vector<Complex> out(M, Complex{0.0});
  for (std::size_t k = 0; k < M; ++k) {
    for (std::size_t j = 0; j < M; ++j) out[k] += fp[j] * gp[(k + M - j) % M];
  }
  return out;
}

SignalChunk zero_pad(const SignalChunk& signal, std::size_t M) {
  if (M < signal.size()) {
    throw ArgumentError("zero_pad: target length " + std::to_string(M) +
                        " shorter than signal");
  }
  return SignalChunk(padded(signal.values(), M));
}

ConvolutionResult convolve_via_theorem(const SignalChunk& f,
                                       const SignalChunk& g,
                                       std::size_t pad_to,
                                       const ConvolveOptions& options) {
  check_pad(pad_to, f.size(), g.size());
  const std::vector<Complex> f_hat = classical_dft(padded(f.values(), pad_to));
  const std::vector<Complex> g_hat = classical_dft(padded(g.values(), pad_to));
  FittedSignal fit_f = SignalChunk::fit(f_hat, FitMode::kAlways);
  FittedSignal fit_g = SignalChunk::fit(g_hat, FitMode::kAlways);

  ProductState p = pointwise_multiply_state(fit_f.chunk, fit_g.chunk,
                                            fit_f.scale, fit_g.scale);
  const double p00 = postselect_probability(p, {0, 0});
  if (!(p00 > 0.0)) {
    throw StateError("convolve_via_theorem: spectrum product is zero");
  }
  // The QFT acts on the register factor only, so it commutes with the
  // ancilla projection and can run before the measurement.
  p.state.apply_qft(p.layout.index_register(), /*inverse=*/true,
                    options.qft_sign);

  ConvolutionResult r;
  r.postselect_pattern = {{p.layout.ancilla(0), 0}, {p.layout.ancilla(1), 0}};
  r.final_state = p.state;
  r.layout = p.layout;
  r.scale_f = fit_f.scale;
  r.scale_g = fit_g.scale;
  r.success_probability = p00;

  Statevector selected = p.state;
  selected.postselect(r.postselect_pattern);
  r.normalized = register_slice(selected, 2, 0);
  r.rescale = std::sqrt(p00) / (fit_f.scale * fit_g.scale);
  r.rescaled = r.normalized;
  for (Complex& c : r.rescaled) c *= r.rescale;
  return r;
}

ConvolutionResult convolve_optimized_spectrum(const SignalChunk& f,
                                              std::span<const Complex> g_hat,
                                              std::size_t pad_to,
                                              const ConvolveOptions& options) {
  check_pad(pad_to, f.size(), 0);
  if (g_hat.size() != pad_to) {
    throw ShapeError("convolve_optimized: kernel spectrum length " +
                     std::to_string(g_hat.size()) + " != pad length " +
                     std::to_string(pad_to));
  }
  if (f.is_zero() || std::all_of(g_hat.begin(), g_hat.end(), [](const Complex& c) {
        return c == Complex{0.0};
      })) {
    throw StateError("convolve_optimized: input or kernel is identically zero");
  }
  const SignalChunk f_padded = zero_pad(f, pad_to);
  const int m = f_padded.num_index_qubits();
  const QubitLayout layout = QubitLayout::standard(m, 2);
  const int t_f = layout.ancilla(0);
  const int t_g = layout.ancilla(1);

  // |f> on the register: encode onto t_f and keep the t_f = 0 branch.
  Statevector state(m + 2);
  state.apply_hadamard_layer(layout.index_register());
  encode_function(state, layout, f_padded, t_f);
  const Control keep_f{t_f, 0};
  const double p_f = state.postselect({&keep_f, 1});

  state.apply_qft(layout.index_register(), /*inverse=*/false, options.qft_sign);
  FittedSignal fit_g = SignalChunk::fit(g_hat, FitMode::kAlways);
  encode_function(state, layout, fit_g.chunk, t_g);
  state.apply_qft(layout.index_register(), /*inverse=*/true, options.qft_sign);

  ConvolutionResult r;
  r.postselect_pattern = {{t_f, 0}, {t_g, 0}};
  r.final_state = state;
  r.layout = layout;
  r.scale_g = fit_g.scale;

  Statevector selected = state;
  const Control keep_g{t_g, 0};
  const double p_g = selected.postselect({&keep_g, 1});
  r.success_probability = p_f * p_g;
  r.normalized = register_slice(selected, 2, 0);
  r.rescale = std::sqrt(static_cast<double>(pad_to) * p_f * p_g) / fit_g.scale;
  r.rescaled = r.normalized;
  for (Complex& c : r.rescaled) c *= r.rescale;
  return r;
}

ConvolutionResult convolve_optimized(const SignalChunk& f,
                                     const SignalChunk& g_kernel,
                                     std::size_t pad_to,
                                     const ConvolveOptions& options) {
  check_pad(pad_to, f.size(), g_kernel.size());
  return convolve_optimized_spectrum(
      f, classical_dft(padded(g_kernel.values(), pad_to)), pad_to, options);
}

}  // namespace qpte
