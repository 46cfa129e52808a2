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

#include "qpte/commands.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "qpte/encoding.hpp"
#include "qpte/ops.hpp"
#include "qpte/parallel.hpp"
#include "qpte/wav.hpp"

namespace qpte {

namespace {

constexpr double kExactProductTolerance = 1e-9;
constexpr double kExactConvolutionTolerance = 1e-6;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

/// "name-K" -> K, or nullopt if `text` does not start with "name-".
std::optional<std::uint64_t> suffix_number(std::string_view text,
                                           std::string_view name) {
  if (text.size() <= name.size() + 1 || text.substr(0, name.size()) != name ||
      text[name.size()] != '-') {
    return std::nullopt;
  }
  const auto k = parse_uint(text.substr(name.size() + 1));
  if (!k) throw UsageError("kernel '" + std::string(text) + "': bad number");
  return k;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

FourierSign qft_sign(bool flipped) {
  return flipped ? FourierSign::kPositive : FourierSign::kNegative;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

/// Loads, normalizes and chunks each input, zero-padding the shorter ones
/// (in the encoded domain) to a common length.
std::vector<ChunkSet> load_chunked(const RunConfig& config, int& sample_rate) {
  std::vector<NormalizedSignal> signals;
  std::size_t length = 0;
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    const AudioBuffer buffer = load_signal(config.inputs[i]);
    if (i == 0) {
      sample_rate = buffer.sample_rate;
    } else if (buffer.sample_rate != sample_rate) {
      throw ArgumentError("inputs have different sample rates (" +
                          std::to_string(sample_rate) + " and " +
                          std::to_string(buffer.sample_rate) + ")");
    }
    if (buffer.samples.empty()) {
      throw FormatError(config.inputs[i].string() + " has no samples");
    }
    signals.push_back(normalize_for_encoding(buffer, config.normalization));
    length = std::max(length, signals.back().values.size());
  }
  std::vector<ChunkSet> sets;
  for (NormalizedSignal& s : signals) {
    s.values.resize(length, 0.0);
    sets.push_back(make_chunks(s.values, config.chunk_size, config.normalization));
  }
  return sets;
}

std::string join_csv(std::initializer_list<std::string> cells) {
  std::string out;
  for (const std::string& c : cells) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_string(KernelDomain domain) {
  return domain == KernelDomain::kTime ? "time" : "frequency";
}

KernelDomain parse_kernel_domain(std::string_view text) {
  if (text == "time") return KernelDomain::kTime;
  if (text == "frequency") return KernelDomain::kFrequency;
  throw UsageError("kernel domain must be 'time' or 'frequency', got '" +
                   std::string(text) + "'");
}

ShotSetting parse_shots(std::string_view text) {
  const std::string t = lower(text);
  if (t == "exact") return std::nullopt;
  const std::size_t e = t.find('e');
  std::optional<std::uint64_t> value;
  if (e == std::string::npos) {
    value = parse_uint(t);
  } else {
    const auto mantissa = parse_uint(std::string_view(t).substr(0, e));
    const auto exponent = parse_uint(std::string_view(t).substr(e + 1));
    if (mantissa && exponent && *exponent <= 18) {
      std::uint64_t v = *mantissa;
      for (std::uint64_t k = 0; k < *exponent && v; ++k) {
        if (v > UINT64_MAX / 10) {
          v = 0;
          break;
        }
        v *= 10;
      }
      if (v) value = v;
    }
  }
  if (!value || *value == 0) {
    throw UsageError("shots must be 'exact' or a positive integer, got '" +
                     std::string(text) + "'");
  }
  return value;
}

std::string to_string(const ShotSetting& shots) {
  return shots ? std::to_string(*shots) : "exact";
}

std::vector<ShotSetting> parse_shot_list(std::string_view text) {
  std::vector<ShotSetting> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(parse_shots(item));
    start = comma + 1;
  }
  if (out.empty()) throw UsageError("shot list is empty");
  return out;
}

std::vector<ShotSetting> default_shot_list() {
  std::vector<ShotSetting> out;
  std::uint64_t s = 10;
  for (int k = 1; k <= 7; ++k, s *= 10) out.push_back(s);
  return out;
}

void validate(const RunConfig& c) {
  static const std::array<std::string_view, 4> kCommands{
      "multiply", "convolve", "shot-sweep", "selftest"};
  if (std::find(kCommands.begin(), kCommands.end(), c.command) ==
      kCommands.end()) {
    throw UsageError("unknown command '" + c.command + "'");
  }
  if (c.chunk_size < 2 || !std::has_single_bit(c.chunk_size)) {
    throw UsageError("--chunk-size must be a power of two >= 2");
  }
  if (c.workers < 1) throw UsageError("--workers must be >= 1");
  if (c.shots && *c.shots == 0) throw UsageError("--shots must be positive");
  if (c.command != "convolve" && (!c.kernel.empty() || c.kernel_domain)) {
    throw UsageError("--kernel only applies to convolve");
  }
  if (c.command == "multiply" && c.inputs.size() != 2) {
    throw UsageError("multiply needs two inputs, got " +
                     std::to_string(c.inputs.size()));
  }
  if (c.command == "convolve") {
    if (c.inputs.size() != 1) {
      throw UsageError("convolve needs one input, got " +
                       std::to_string(c.inputs.size()));
    }
    if (c.kernel.empty()) throw UsageError("convolve needs --kernel");
  }
  if (c.command == "shot-sweep") {
    if (c.inputs.size() != 0 && c.inputs.size() != 2) {
      throw UsageError("shot-sweep takes zero or two inputs");
    }
    if (c.shot_list.empty()) throw UsageError("shot list is empty");
    if (c.seeds < 1) throw UsageError("--seeds must be >= 1");
  }
  if (c.command == "selftest" && !c.inputs.empty()) {
    throw UsageError("selftest takes no inputs");
  }
}

std::string sha256_hex(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256: digest init failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

std::string manifest_text(const RunConfig& c) {
  std::ostringstream m;
  m << "manifest_version=" << kManifestVersion << '\n'
    << "tool=qpte\n"
    << "tool_version=" << kVersion << '\n'
    << "command=" << c.command << '\n'
    << "num_inputs=" << c.inputs.size() << '\n';
  for (std::size_t i = 0; i < c.inputs.size(); ++i) {
    m << "input." << i << ".path=" << c.inputs[i].string() << '\n'
      << "input." << i << ".sha256=" << sha256_hex(c.inputs[i]) << '\n';
  }
  m << "chunk_size=" << c.chunk_size << '\n'
    << "shots=" << to_string(c.shots) << '\n'
    << "seed=" << c.seed << '\n'
    << "workers=" << c.workers << '\n'
    << "normalization=" << to_string(c.normalization) << '\n'
    << "out=" << c.out.string() << '\n';
  if (c.command == "convolve") {
    m << "kernel=" << c.kernel << '\n'
      << "kernel_domain="
      << (c.kernel_domain ? to_string(*c.kernel_domain) : "default") << '\n';
    const std::filesystem::path kpath(c.kernel);
    std::error_code ec;
    if (std::filesystem::is_regular_file(kpath, ec)) {
      m << "kernel.sha256=" << sha256_hex(kpath) << '\n';
    }
  }
  if (c.command == "shot-sweep") {
    m << "shot_list=";
    for (std::size_t i = 0; i < c.shot_list.size(); ++i) {
      m << (i ? "," : "") << to_string(c.shot_list[i]);
    }
    m << '\n' << "seeds=" << c.seeds << '\n';
  }
  m << "dump_circuit=" << (c.dump_circuit ? "true" : "false") << '\n'
    << "mutate_qft_sign=" << (c.mutate_qft_sign ? "true" : "false") << '\n';
  return m.str();
}

AudioBuffer load_signal(const std::filesystem::path& path) {
  if (lower(path.extension().string()) == ".wav") return load_wav(path);
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  AudioBuffer buffer;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    line = line.substr(0, line.find('#'));
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(v)) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": not a number: '" + token + "'");
    }
    buffer.samples.push_back(v);
  }
  return buffer;
}

Kernel resolve_kernel(std::string_view kernel_spec,
                      std::optional<KernelDomain> file_domain,
                      std::size_t chunk_size) {
  const std::size_t M = 2 * chunk_size;
  Kernel k;
  k.name = std::string(kernel_spec);
  auto builtin_domain = [&](KernelDomain natural) {
    if (file_domain && *file_domain != natural) {
      throw UsageError("kernel '" + k.name + "' is defined in the " +
                       to_string(natural) + " domain");
    }
    k.domain = natural;
  };

  if (kernel_spec == "identity") {
    builtin_domain(KernelDomain::kTime);
    k.values = {1.0};
    return k;
  }
  if (auto shift = suffix_number(kernel_spec, "shift")) {
    builtin_domain(KernelDomain::kTime);
    if (*shift >= chunk_size) {
      throw ArgumentError("kernel " + k.name + " is longer than the chunk (" +
                          std::to_string(chunk_size) + ")");
    }
    k.values.assign(*shift + 1, 0.0);
    k.values.back() = 1.0;
    return k;
  }
  if (auto taps = suffix_number(kernel_spec, "moving-average")) {
    builtin_domain(KernelDomain::kTime);
    if (*taps == 0) throw UsageError("moving-average needs at least one tap");
    if (*taps > chunk_size) {
      throw ArgumentError("kernel " + k.name + " is longer than the chunk (" +
                          std::to_string(chunk_size) + ")");
    }
    k.values.assign(*taps, 1.0 / static_cast<double>(*taps));
    return k;
  }
  if (auto cutoff = suffix_number(kernel_spec, "low-pass")) {
    builtin_domain(KernelDomain::kFrequency);
    if (*cutoff > M / 2) {
      throw ArgumentError("low-pass cutoff " + std::to_string(*cutoff) +
                          " exceeds Nyquist bin " + std::to_string(M / 2));
    }
    // Symmetric passband, so the time response is real.
    k.values.assign(M, 0.0);
    for (std::size_t b = 0; b < M; ++b) {
      if (std::min(b, M - b) <= *cutoff) k.values[b] = 1.0;
    }
    return k;
  }

  const std::filesystem::path path(kernel_spec);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw UsageError("unknown kernel '" + k.name +
                     "' (expected identity, shift-K, moving-average-K, "
                     "low-pass-K or a file)");
  }
  k.domain = file_domain.value_or(KernelDomain::kTime);
  const AudioBuffer taps = load_signal(path);
  k.values.assign(taps.samples.begin(), taps.samples.end());
  if (k.values.empty()) throw FormatError("kernel file " + k.name + " is empty");
  if (k.domain == KernelDomain::kTime && k.values.size() > chunk_size) {
    throw ArgumentError("kernel has " + std::to_string(k.values.size()) +
                        " taps, longer than the chunk (" +
                        std::to_string(chunk_size) + ")");
  }
  if (k.domain == KernelDomain::kFrequency && k.values.size() != M) {
    throw ArgumentError("frequency-domain kernel needs " + std::to_string(M) +
                        " bins, got " + std::to_string(k.values.size()));
  }
  return k;
}

std::vector<Complex> kernel_time_response(const Kernel& kernel, std::size_t M) {
  if (kernel.domain == KernelDomain::kFrequency) {
    if (kernel.values.size() != M) throw ShapeError("kernel spectrum size != M");
    return classical_dft(kernel.values, /*inverse=*/true);
  }
  if (kernel.values.size() > M) throw ShapeError("kernel longer than M");
  std::vector<Complex> out(M, Complex{0.0});
  std::copy(kernel.values.begin(), kernel.values.end(), out.begin());
  return out;
}

std::vector<Complex> kernel_spectrum(const Kernel& kernel, std::size_t M) {
  if (kernel.domain == KernelDomain::kFrequency) {
    if (kernel.values.size() != M) throw ShapeError("kernel spectrum size != M");
    return kernel.values;
  }
  return classical_dft(kernel_time_response(kernel, M));
}

int run_multiply(const RunConfig& config, std::ostream& log) {
  int sample_rate = 8000;
  const std::vector<ChunkSet> sets = load_chunked(config, sample_rate);
  const ChunkSet& f = sets[0];
  const ChunkSet& g = sets[1];

  ProcessOptions options;
  options.shots = config.shots;
  options.workers = config.workers;
  options.base_seed = config.seed;
  const QuadOutput out = process_chunks(f, g, options);
  stitch_and_write(out, f.plan, sample_rate, config.out);

  if (config.dump_circuit && !f.chunks.empty()) {
    const QubitLayout layout =
        QubitLayout::standard(f.chunks[0].num_index_qubits(), 2);
    std::string text = "# chunk 0: f on t_f\n";
    text += describe_circuit(encoding_circuit(layout, f.chunks[0], layout.ancilla(0)));
    text += "# chunk 0: g on t_g\n";
    text += describe_circuit(encoding_circuit(layout, g.chunks[0], layout.ancilla(1)));
    write_text(config.out / "circuit.txt", text);
  }

  log << "multiply: " << f.plan.num_chunks << " chunks of "
      << f.plan.chunk_size << " samples, shots=" << to_string(config.shots)
      << ", outputs in " << config.out.string() << '\n';

  if (!config.shots) {
    double worst = 0.0;
    const std::vector<double>& c00 = out.channel({0, 0});
    for (std::size_t c = 0; c < f.chunks.size(); ++c) {
      for (std::size_t x = 0; x < f.plan.chunk_size; ++x) {
        const double expected = std::abs(f.chunks[c][x] * g.chunks[c][x]);
        worst = std::max(worst,
                         std::abs(c00[c * f.plan.chunk_size + x] - expected));
      }
    }
    log << "multiply: max |channel00 - f*g| = " << worst << '\n';
    if (!(worst <= kExactProductTolerance)) {
      log << "multiply: FAIL exact product check\n";
      return kExitCheckFailed;
    }
  }
  return kExitOk;
}

int run_convolve(const RunConfig& config, std::ostream& log) {
  int sample_rate = 8000;
  const ChunkSet f = load_chunked(config, sample_rate)[0];
  const std::size_t N = config.chunk_size;
  const std::size_t M = 2 * N;
  const Kernel kernel = resolve_kernel(config.kernel, config.kernel_domain, N);
  const std::vector<Complex> g_time = kernel_time_response(kernel, M);
  const std::vector<Complex> g_hat = kernel_spectrum(kernel, M);
  ConvolveOptions copts;
  copts.qft_sign = qft_sign(config.mutate_qft_sign);

  struct ChunkOut {
    std::vector<double> y;
    std::vector<double> oracle;
    ChunkMetrics metrics;
  };
  std::vector<ChunkOut> results(f.chunks.size());
  parallel_for_index(f.chunks.size(), config.workers, [&](std::size_t i) {
    const SignalChunk& chunk = f.chunks[i];
    const double scale = f.plan.scale_factors[i];
    ChunkOut& r = results[i];
    r.metrics.chunk_index = i;
    r.metrics.scale_f = scale;
    r.metrics.report.shots = config.shots;
    r.metrics.report.seed = derive_seed(config.seed, i);

    const std::vector<Complex> oracle =
        classical_circular_convolution(chunk.values(), g_time, M);
    r.oracle.resize(M);
    for (std::size_t k = 0; k < M; ++k) r.oracle[k] = oracle[k].real() / scale;
    r.y.assign(M, 0.0);
    if (chunk.is_zero()) return;

    const ConvolutionResult cr = convolve_optimized_spectrum(chunk, g_hat, M, copts);
    r.metrics.scale_g = cr.scale_g;
    if (!config.shots) {
      for (std::size_t k = 0; k < M; ++k) r.y[k] = cr.rescaled[k].real() / scale;
      r.metrics.report.postselect_probability = cr.success_probability;
    } else {
      // The register was already post-selected on t_f = 0, so its success
      // probability p_f enters as a known constant; t_g = 0 is counted.
      const double p_f = cr.success_probability /
                         postselect_probability(
                             ProductState{cr.final_state, cr.layout, 1.0, 1.0},
                             {0, 0});
      const ShotCounts counts =
          sample_counts(cr.final_state, *config.shots, r.metrics.report.seed);
      std::uint64_t hits = 0;
      for (const auto& [outcome, c] : counts.counts) {
        if ((outcome & 3U) != 0) continue;
        hits += c;
        const double a = std::sqrt(static_cast<double>(c) /
                                   static_cast<double>(counts.shots));
        r.y[outcome >> 2] =
            std::sqrt(static_cast<double>(M) * p_f) * a / cr.scale_g / scale;
      }
      r.metrics.report.postselect_probability =
          p_f * static_cast<double>(hits) / static_cast<double>(counts.shots);
      r.metrics.report.fidelity_percent = fidelity_percent(counts, cr.final_state);
    }
    r.metrics.report.rmsd_percent = rmsd_percent(r.y, r.oracle);
  });

  // Overlap-add of the M-sample blocks, trimmed to the input length.
  const std::size_t total = f.plan.total_samples;
  std::vector<double> y(f.chunks.size() * N + N, 0.0);
  std::vector<double> oracle(y.size(), 0.0);
  std::vector<ChunkMetrics> metrics;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t k = 0; k < M; ++k) {
      y[i * N + k] += results[i].y[k];
      oracle[i * N + k] += results[i].oracle[k];
    }
    metrics.push_back(results[i].metrics);
  }
  y.resize(total);
  oracle.resize(total);

  double err2 = 0.0;
  double ref2 = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    err2 += (y[i] - oracle[i]) * (y[i] - oracle[i]);
    ref2 += oracle[i] * oracle[i];
  }
  const double rel_l2 = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);

  ensure_output_dir(config.out);
  AudioBuffer buffer;
  buffer.sample_rate = sample_rate;
  buffer.samples = y;
  write_wav(config.out / "convolved.wav", buffer);
  write_metrics_csv(config.out / "metrics.csv", metrics);

  log << "convolve: kernel " << kernel.name << " (" << to_string(kernel.domain)
      << "), " << f.plan.num_chunks << " chunks, M=" << M
      << ", shots=" << to_string(config.shots) << '\n'
      << "convolve: relative L2 vs classical = " << rel_l2 << '\n';
  if (!config.shots && !(rel_l2 < kExactConvolutionTolerance)) {
    log << "convolve: FAIL exact convolution check\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

std::vector<double> default_sweep_f(std::size_t n) {
  std::vector<double> f(n);
  for (std::size_t x = 0; x < n; ++x) {
    f[x] = 0.92 + 0.06 * std::sin(2.0 * std::numbers::pi * static_cast<double>(x) /
                                  static_cast<double>(n));
  }
  return f;
}

std::vector<double> default_sweep_g(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t x = 0; x < n; ++x) {
    g[x] = 0.999995 + 4e-6 * std::cos(2.0 * std::numbers::pi *
                                      static_cast<double>(x) /
                                      static_cast<double>(n));
  }
  return g;
}

int run_shot_sweep(const RunConfig& config, std::ostream& log) {
  const std::size_t N = config.chunk_size;
  SignalChunk f = SignalChunk::from_real(default_sweep_f(N));
  SignalChunk g = SignalChunk::from_real(default_sweep_g(N));
  if (!config.inputs.empty()) {
    int sample_rate = 8000;
    const std::vector<ChunkSet> sets = load_chunked(config, sample_rate);
    if (sets[0].plan.total_samples != N) {
      throw UsageError("shot-sweep inputs must have exactly chunk-size (" +
                       std::to_string(N) + ") samples");
    }
    f = sets[0].chunks[0];
    g = sets[1].chunks[0];
  }
  const ProductState p = pointwise_multiply_state(f, g);
  const int n = f.num_index_qubits();
  std::vector<double> truth(N);
  for (std::size_t x = 0; x < N; ++x) truth[x] = std::abs(f[x] * g[x]);

  std::ostringstream csv;
  csv << "shots,log10_shots,median_rmsd_percent,median_fidelity_percent,"
         "min_rmsd_percent,max_rmsd_percent,seeds\n";
  log << std::setw(10) << "shots" << std::setw(14) << "rmsd_%"
      << std::setw(14) << "fidelity_%" << '\n';
  for (std::size_t j = 0; j < config.shot_list.size(); ++j) {
    const ShotSetting& shots = config.shot_list[j];
    std::vector<double> rmsd;
    std::vector<double> fidelity;
    if (!shots) {
      std::vector<double> est(N);
      const std::vector<Complex> c00 = extract_component(p, {0, 0});
      for (std::size_t x = 0; x < N; ++x) est[x] = std::abs(c00[x]);
      rmsd.push_back(rmsd_percent(est, truth));
      fidelity.push_back(100.0);
    } else {
      std::vector<Seed> seeds(config.seeds);
      for (unsigned s = 0; s < config.seeds; ++s) {
        seeds[s] = derive_seed(derive_seed(config.seed, j), s);
      }
      rmsd.resize(config.seeds);
      fidelity.resize(config.seeds);
      parallel_for_index(config.seeds, config.workers, [&](std::size_t s) {
        const ShotCounts counts = sample_counts(p.state, *shots, seeds[s]);
        rmsd[s] = rmsd_percent(decode_component(counts, n, {0, 0}), truth);
        fidelity[s] = fidelity_percent(counts, p.state);
      });
    }
    const double med_rmsd = median(rmsd);
    const double med_fid = median(fidelity);
    csv << join_csv({to_string(shots),
                     shots ? format_number(std::log10(static_cast<double>(*shots)))
                           : std::string{},
                     format_number(med_rmsd), format_number(med_fid),
                     format_number(*std::min_element(rmsd.begin(), rmsd.end())),
                     format_number(*std::max_element(rmsd.begin(), rmsd.end())),
                     std::to_string(rmsd.size())})
        << '\n';
    log << std::setw(10) << to_string(shots) << std::setw(14) << med_rmsd
        << std::setw(14) << med_fid << '\n';
  }
  ensure_output_dir(config.out);
  write_text(config.out / "shot_sweep.csv", csv.str());
  return kExitOk;
}

namespace {

struct Check {
  std::string name;
  double error;
  double tolerance;
};

std::vector<Complex> random_disk(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> v(n);
  for (Complex& c : v) {
    c = std::polar(0.999 * std::sqrt(radius(rng)), angle(rng));
  }
  return v;
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double relative_l2(std::span<const Complex> a, std::span<const Complex> ref) {
  double e = 0.0;
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    e += std::norm(a[i] - ref[i]);
    r += std::norm(ref[i]);
  }
  return std::sqrt(e / r);
}

}  // namespace

int run_selftest(const SelftestOptions& options, std::ostream& log) {
  std::mt19937_64 rng(20260101);
  const FourierSign sign = qft_sign(options.flip_qft_sign);
  std::vector<Check> checks;

  {
    double worst = 0.0;
    for (int m = 1; m <= 4; ++m) {
      const std::size_t M = std::size_t{1} << m;
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> amps = random_disk(rng, M);
        Statevector s = Statevector::from_amplitudes(amps);
        s.normalize();
        const std::vector<Complex> input(s.amplitudes().begin(), s.amplitudes().end());
        std::vector<int> reg(m);
        for (int q = 0; q < m; ++q) reg[q] = q;
        s.apply_qft(reg, false, sign);
        std::vector<Complex> expected = classical_dft(input);
        for (Complex& c : expected) c /= std::sqrt(static_cast<double>(M));
        worst = std::max(worst, max_diff(s.amplitudes(), expected));
      }
    }
    checks.push_back({"qft_matches_dft", worst, 1e-12});
  }

  {
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
      const std::size_t N = std::size_t{1} << n;
      for (int trial = 0; trial < 20; ++trial) {
        const SignalChunk f(random_disk(rng, N));
        Statevector s(n + 1);
        const QubitLayout layout = QubitLayout::standard(n, 1);
        s.apply_hadamard_layer(layout.index_register());
        encode_function(s, layout, f, layout.ancilla(0));
        for (std::size_t x = 0; x < N; ++x) {
          const Complex expected = f[x] / std::sqrt(static_cast<double>(N));
          worst = std::max(worst, std::abs(s[2 * x] - expected));
        }
      }
    }
    checks.push_back({"encoding_slice", worst, 1e-12});
  }

  {
    double worst = 0.0;
    const std::size_t N = 8;
    for (int trial = 0; trial < 20; ++trial) {
      const SignalChunk f(random_disk(rng, N));
      const SignalChunk g(random_disk(rng, N));
      const ProductState p = pointwise_multiply_state(f, g);
      double p00 = 0.0;
      for (std::size_t x = 0; x < N; ++x) {
        const Complex ff[2] = {f[x], std::sqrt(1.0 - std::norm(f[x]))};
        const Complex gg[2] = {g[x], std::sqrt(1.0 - std::norm(g[x]))};
        for (int tf = 0; tf < 2; ++tf) {
          for (int tg = 0; tg < 2; ++tg) {
            const Complex expected = ff[tf] * gg[tg] / std::sqrt(8.0);
            worst = std::max(worst, std::abs(p.state[4 * x + 2 * tf + tg] - expected));
          }
        }
        p00 += std::norm(f[x] * g[x]) / 8.0;
      }
      worst = std::max(worst, std::abs(postselect_probability(p, {0, 0}) - p00));
    }
    checks.push_back({"multiply_matches_formula", worst, 1e-12});
  }

  ConvolveOptions copts;
  copts.qft_sign = sign;
  for (bool optimized : {false, true}) {
    double worst = 0.0;
    for (auto [N, M] : {std::pair<std::size_t, std::size_t>{4, 8}, {8, 16}}) {
      for (int trial = 0; trial < 10; ++trial) {
        const SignalChunk f(random_disk(rng, N));
        const SignalChunk g(random_disk(rng, N));
        const ConvolutionResult r = optimized ? convolve_optimized(f, g, M, copts)
                                              : convolve_via_theorem(f, g, M, copts);
        const std::vector<Complex> oracle =
            classical_circular_convolution(f.values(), g.values(), M);
        worst = std::max(worst, relative_l2(r.rescaled, oracle));
      }
    }
    checks.push_back({optimized ? "convolve_optimized_matches_brute_force"
                                : "convolve_via_theorem_matches_brute_force",
                      worst, 1e-9});
  }

  {
    const SignalChunk f = SignalChunk::from_real(default_sweep_f(8));
    const SignalChunk g = SignalChunk::from_real(default_sweep_g(8));
    const ProductState p = pointwise_multiply_state(f, g);
    const ShotCounts a = sample_counts(p.state, 10000, 7);
    const ShotCounts b = sample_counts(p.state, 10000, 7);
    checks.push_back({"sampling_deterministic", a.counts == b.counts ? 0.0 : 1.0, 0.5});
  }

  int failed = 0;
  for (const Check& c : checks) {
    const bool ok = c.error <= c.tolerance;
    failed += ok ? 0 : 1;
    log << (ok ? "PASS " : "FAIL ") << c.name << " (error " << c.error
        << ", tolerance " << c.tolerance << ")\n";
  }
  log << "selftest: " << checks.size() - static_cast<std::size_t>(failed) << "/"
      << checks.size() << " checks passed\n";
  return failed ? kExitCheckFailed : kExitOk;
}

int run_command(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config);
    if (config.command == "selftest") {
      return run_selftest({config.mutate_qft_sign}, log);
    }
    int status = kExitError;
    if (config.command == "multiply") status = run_multiply(config, log);
    if (config.command == "convolve") status = run_convolve(config, log);
    if (config.command == "shot-sweep") status = run_shot_sweep(config, log);
    ensure_output_dir(config.out);
    write_text(config.out / "manifest.txt", manifest_text(config));
    return status;
  } catch (const ArgumentError& e) {
    err << "qpte " << config.command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qpte " << config.command << ": error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace qpte
