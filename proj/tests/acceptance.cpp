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

// Acceptance gate. Runs every release criterion against independent oracles
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "qpte/audio.hpp"
#include "qpte/commands.hpp"
#include "qpte/encoding.hpp"
#include "qpte/ops.hpp"
#include "qpte/sampling.hpp"
#include "qpte/statevector.hpp"
#include "qpte/wav.hpp"
#include "test_util.hpp"

namespace qpte {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<int> register_positions(int first, int count) {
  std::vector<int> r(count);
  for (int i = 0; i < count; ++i) r[i] = first + i;
  return r;
}

// 1. Ancilla-0 slice after encoding equals f / sqrt(N).
Outcome encoding_correctness() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 4;
    const std::size_t N = std::size_t{1} << n;
    const std::vector<Complex> f = oracle::random_signal(rng, N);
    const QubitLayout layout = QubitLayout::standard(n, 1);
    Statevector s(n + 1);
    s.apply_hadamard_layer(layout.index_register());
    encode_function(s, layout, SignalChunk(f), layout.ancilla(0));
    for (std::size_t x = 0; x < N; ++x) {
      worst = std::max(worst, std::abs(s[2 * x] - f[x] / std::sqrt(double(N))));
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-12 && t < 10.0,
          fmt("1000 signals n=1..4: max_err=%.3g (<1e-12), %.2fs (<10s)", worst, t)};
}

// 2. Product state rows and |00> post-selection probability.
Outcome product_state() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  double amp_err = 0.0;
  double prob_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_signal(rng, 8);
    const auto g = oracle::random_signal(rng, 8);
    const ProductState p = pointwise_multiply_state(SignalChunk(f), SignalChunk(g));
    double p00 = 0.0;
    for (std::size_t x = 0; x < 8; ++x) {
      for (unsigned tf = 0; tf < 2; ++tf) {
        for (unsigned tg = 0; tg < 2; ++tg) {
          amp_err = std::max(amp_err, std::abs(p.state[4 * x + 2 * tf + tg] -
                                               oracle::product_amplitude(f, g, x, tf, tg)));
        }
      }
      p00 += std::norm(f[x] * g[x]) / 8.0;
    }
    prob_err = std::max(prob_err, std::abs(postselect_probability(p, {0, 0}) - p00));

    Statevector measured = p.state;
    const Control keep[2] = {{p.layout.ancilla(0), 0}, {p.layout.ancilla(1), 0}};
    prob_err = std::max(prob_err, std::abs(measured.postselect(keep) - p00));
  }
  const double t = seconds_since(t0);
  return {amp_err < 1e-12 && prob_err < 1e-12 && t < 5.0,
          fmt("100 pairs n=3: amp_err=%.3g, p00_err=%.3g (<1e-12), %.2fs (<5s)",
              amp_err, prob_err, t)};
}

// 3. QFT amplitudes equal DFT / sqrt(M) with omega = exp(-2 pi i / M).
Outcome qft_equals_dft() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const std::size_t M = std::size_t{1} << m;
    for (int trial = 0; trial < 50 + static_cast<int>(M); ++trial) {
      std::vector<Complex> in;
      if (trial < static_cast<int>(M)) {
        in.assign(M, 0.0);
        in[trial] = 1.0;
      } else {
        in = oracle::random_state(rng, m);
      }
      Statevector s = Statevector::from_amplitudes(in);
      s.apply_qft(register_positions(0, m), false);
      for (std::size_t k = 0; k < M; ++k) {
        Complex expected{0.0};
        for (std::size_t x = 0; x < M; ++x) {
          expected += in[x] * std::exp(Complex{0.0, -2.0 * std::numbers::pi *
                                                        double(k * x) / double(M)});
        }
        expected /= std::sqrt(double(M));
        worst = std::max(worst, std::abs(s[k] - expected));
      }
    }
  }
  return {worst < 1e-12, fmt("M in {2,4,8,16}: max_diff=%.3g (<1e-12)", worst)};
}

std::vector<Complex> brute_circular(const std::vector<Complex>& f,
                                    const std::vector<Complex>& g, std::size_t M) {
  std::vector<Complex> out(M, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) out[(i + j) % M] += f[i] * g[j];
  }
  return out;
}

double global_scale(const std::vector<Complex>& a, const std::vector<Complex>& ref) {
  Complex num{0.0};
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::conj(a[i]) * ref[i];
    den += std::norm(a[i]);
  }
  return num.real() / den;
}

// 4. Both convolution pipelines against brute force.
Outcome convolution_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(404);
  double worst = 0.0;
  double worst_linear = 0.0;
  bool positive_scale = true;
  for (auto [N, M] : {std::pair<std::size_t, std::size_t>{4, 8}, {8, 16}}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = oracle::random_signal(rng, N);
      const auto g = oracle::random_signal(rng, N);
      const auto circ = brute_circular(f, g, M);
      const auto lin = oracle::linear_convolution(f, g);
      for (bool optimized : {false, true}) {
        const ConvolutionResult r =
            optimized ? convolve_optimized(SignalChunk(f), SignalChunk(g), M)
                      : convolve_via_theorem(SignalChunk(f), SignalChunk(g), M);
        positive_scale = positive_scale && global_scale(r.normalized, circ) > 0.0;
        worst = std::max(worst, oracle::relative_l2_after_normalizing(r.normalized, circ));
        worst = std::max(worst, oracle::relative_l2(r.rescaled, circ));
        std::vector<Complex> head(r.rescaled.begin(), r.rescaled.begin() + lin.size());
        worst_linear = std::max(worst_linear, oracle::relative_l2(head, lin));
        for (std::size_t k = lin.size(); k < M; ++k) {
          worst_linear = std::max(worst_linear, std::abs(r.rescaled[k]));
        }
      }
    }
  }
  const double t = seconds_since(t0);
  return {worst < 1e-9 && worst_linear < 1e-9 && positive_scale && t < 30.0,
          fmt("200 pairs x 2 methods: rel_l2=%.3g, linear=%.3g (<1e-9), "
              "scale>0=%s, %.2fs (<30s)",
              worst, worst_linear, positive_scale ? "yes" : "no", t)};
}

// 5. Shot-scaling bands for the standard 8-sample pair.
Outcome shot_scaling() {
  const auto t0 = Clock::now();
  const std::vector<double> f = default_sweep_f(8);
  const std::vector<double> g = default_sweep_g(8);
  const ProductState p =
      pointwise_multiply_state(SignalChunk::from_real(f), SignalChunk::from_real(g));
  std::vector<double> truth(8);
  for (std::size_t x = 0; x < 8; ++x) truth[x] = f[x] * g[x];

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
  };
  std::vector<double> log_shots, log_rmsd;
  double rmsd[7] = {};
  double fid[7] = {};
  for (int decade = 2; decade <= 6; ++decade) {
    const auto shots = static_cast<std::uint64_t>(std::pow(10.0, decade));
    std::vector<double> r, q;
    for (Seed s = 0; s < 20; ++s) {
      const ShotCounts c = sample_counts(p.state, shots, derive_seed(500 + decade, s));
      r.push_back(rmsd_percent(decode_component(c, 3, {0, 0}), truth));
      q.push_back(fidelity_percent(c, p.state));
    }
    rmsd[decade] = median(r);
    fid[decade] = median(q);
    log_shots.push_back(decade);
    log_rmsd.push_back(std::log10(rmsd[decade]));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < log_shots.size(); ++i) {
    mx += log_shots[i];
    my += log_rmsd[i];
  }
  mx /= log_shots.size();
  my /= log_shots.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < log_shots.size(); ++i) {
    sxy += (log_shots[i] - mx) * (log_rmsd[i] - my);
    sxx += (log_shots[i] - mx) * (log_shots[i] - mx);
  }
  const double slope = sxy / sxx;
  const double t = seconds_since(t0);
  const bool pass = rmsd[2] >= 2.0 && rmsd[2] <= 18.0 && rmsd[4] <= 1.0 &&
                    rmsd[6] <= 0.12 && fid[3] >= 99.0 && fid[5] >= 99.99 &&
                    slope >= -0.6 && slope <= -0.4 && t < 300.0;
  return {pass,
          fmt("median/20 seeds: rmsd(1e2)=%.3f%% [2,18], rmsd(1e4)=%.3f%% (<=1), "
              "rmsd(1e6)=%.4f%% (<=0.12), fid(1e3)=%.3f%% (>=99), "
              "fid(1e5)=%.4f%% (>=99.99), slope=%.3f [-0.6,-0.4], %.1fs (<300s)",
              rmsd[2], rmsd[4], rmsd[6], fid[3], fid[5], slope, t)};
}

void write_tone(const std::filesystem::path& path, double freq, double phase) {
  AudioBuffer b;
  b.sample_rate = 8000;
  for (int i = 0; i < 8000; ++i) {
    b.samples.push_back(0.5 + 0.45 * std::sin(2 * std::numbers::pi * freq * i / 8000.0 + phase));
  }
  write_wav(path, b);
}

int run_quiet(const RunConfig& c) {
  std::ostringstream log, err;
  const int status = run_command(c, log, err);
  if (status != kExitOk) std::fprintf(stderr, "%s%s", log.str().c_str(), err.str().c_str());
  return status;
}

// 6. One-second tones, exact mode, channel 00 against the product.
Outcome audio_end_to_end(const std::filesystem::path& dir) {
  write_tone(dir / "a.wav", 440.0, 0.0);
  write_tone(dir / "b.wav", 97.0, 1.3);
  RunConfig c;
  c.command = "multiply";
  c.inputs = {dir / "a.wav", dir / "b.wav"};
  c.out = dir / "e2e";
  const auto t0 = Clock::now();
  const int status = run_quiet(c);
  const double t = seconds_since(t0);
  if (status != kExitOk) return {false, fmt("multiply exited %d", status)};
  const AudioBuffer a = load_wav(dir / "a.wav");
  const AudioBuffer b = load_wav(dir / "b.wav");
  const AudioBuffer out = load_wav(dir / "e2e" / "component_00.wav");
  if (out.samples.size() != 8000) return {false, "component_00.wav has wrong length"};
  int worst_lsb = 0;
  for (std::size_t i = 0; i < 8000; ++i) {
    const int expected = to_pcm16(a.samples[i] * b.samples[i]);
    worst_lsb = std::max(worst_lsb, std::abs(to_pcm16(out.samples[i]) - expected));
  }
  return {worst_lsb <= 1 && t < 120.0,
          fmt("8000 samples, chunk 8, exact: max_dev=%d LSB (<=1), %.2fs (<120s)",
              worst_lsb, t)};
}

std::string channel_bytes(const QuadOutput& q) {
  std::string bytes;
  for (const auto& ch : q.channels) {
    bytes.append(reinterpret_cast<const char*>(ch.data()), ch.size() * sizeof(double));
  }
  for (const ChunkMetrics& m : q.metrics) bytes += m.to_csv_row() + "\n";
  return bytes;
}

// 7. Worker-pool scaling, 256 chunks in shot mode.
Outcome parallel_scaling() {
  std::mt19937_64 rng(707);
  std::vector<double> fs(256 * 8), gs(256 * 8);
  for (double& v : fs) v = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
  for (double& v : gs) v = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
  const ChunkSet f = make_chunks(fs, 8);
  const ChunkSet g = make_chunks(gs, 8);
  ProcessOptions opts;
  opts.shots = 100000;
  opts.base_seed = 7;
  auto timed = [&](unsigned workers, std::string& bytes) {
    opts.workers = workers;
    const auto t0 = Clock::now();
    const QuadOutput q = process_chunks(f, g, opts);
    const double t = seconds_since(t0);
    bytes = channel_bytes(q);
    return t;
  };
  std::string one, four;
  const double t1 = timed(1, one);
  const double t4 = timed(4, four);
  const double ratio = t4 / t1;
  const bool identical = one == four;
  return {ratio <= 0.5 && identical,
          fmt("t1=%.2fs t4=%.2fs ratio=%.3f (<=0.5), identical=%s, "
              "hardware_threads=%u",
              t1, t4, ratio, identical ? "yes" : "no",
              std::thread::hardware_concurrency())};
}

// 8. Two identical runs produce identical files.
Outcome determinism(const std::filesystem::path& dir) {
  write_tone(dir / "d1.wav", 300.0, 0.2);
  write_tone(dir / "d2.wav", 1200.0, 0.9);
  RunConfig c;
  c.command = "multiply";
  c.inputs = {dir / "d1.wav", dir / "d2.wav"};
  c.shots = 10000;
  c.seed = 2024;
  c.workers = 2;
  const char* files[] = {"component_00.wav", "component_01.wav", "component_10.wav",
                         "component_11.wav", "metrics.csv"};
  c.out = dir / "run1";
  if (run_quiet(c) != kExitOk) return {false, "first run failed"};
  c.out = dir / "run2";
  if (run_quiet(c) != kExitOk) return {false, "second run failed"};
  int differing = 0;
  for (const char* name : files) {
    differing += test::read_file(dir / "run1" / name) != test::read_file(dir / "run2" / name);
  }
  // Manifests differ only in the recorded output directory.
  const auto without_out = [](std::string m) {
    const auto p = m.find("\nout=");
    return m.erase(p, m.find('\n', p + 1) - p);
  };
  const bool manifests_match =
      without_out(test::read_file(dir / "run1" / "manifest.txt")) ==
      without_out(test::read_file(dir / "run2" / "manifest.txt"));
  return {differing == 0 && manifests_match,
          fmt("multiply 1e4 shots seed 2024 twice: %d of 5 WAV/CSV files differ, "
              "manifests match=%s",
              differing, manifests_match ? "yes" : "no")};
}

}  // namespace
}  // namespace qpte

int main() {
  using namespace qpte;
  test::ScratchDir dir("acceptance");
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 encoding-correctness", encoding_correctness},
      {"2 pointwise-product-state", product_state},
      {"3 qft-equals-dft", qft_equals_dft},
      {"4 convolution-oracle", convolution_oracle},
      {"5 shot-scaling", shot_scaling},
      {"6 audio-end-to-end", [&] { return audio_end_to_end(dir.path()); }},
      {"7 parallel-scaling", parallel_scaling},
      {"8 determinism", [&] { return determinism(dir.path()); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed;
}
