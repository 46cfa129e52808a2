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

// Command implementations behind the qpte executable. Each command takes a
// validated RunConfig, writes its artifacts under RunConfig::out and returns
// a process exit status.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpte/audio.hpp"
#include "qpte/error.hpp"
#include "qpte/sampling.hpp"
#include "qpte/statevector.hpp"

namespace qpte {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr int kManifestVersion = 1;

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
/// The run completed but an oracle check on its output failed.
inline constexpr int kExitCheckFailed = 3;

class UsageError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

enum class KernelDomain { kTime, kFrequency };

std::string to_string(KernelDomain domain);
KernelDomain parse_kernel_domain(std::string_view text);

/// A shot count, or nullopt for exact statevector mode.
using ShotSetting = std::optional<std::uint64_t>;

/// "exact", a positive integer, or a power of ten written as 1eK.
ShotSetting parse_shots(std::string_view text);
std::string to_string(const ShotSetting& shots);
/// Comma-separated list of parse_shots entries.
std::vector<ShotSetting> parse_shot_list(std::string_view text);
std::vector<ShotSetting> default_shot_list();

struct RunConfig {
  std::string command;
  std::vector<std::filesystem::path> inputs;
  std::size_t chunk_size = 8;
  ShotSetting shots;
  Seed seed = 0;
  unsigned workers = 1;
  NormalizationMode normalization = NormalizationMode::kAssumePositive;
  std::filesystem::path out = "qpte_out";

  // convolve
  std::string kernel;
  std::optional<KernelDomain> kernel_domain;

  // shot-sweep
  std::vector<ShotSetting> shot_list = default_shot_list();
  unsigned seeds = 20;

  bool dump_circuit = false;
  /// Test hook: run every QFT with the opposite sign convention.
  bool mutate_qft_sign = false;
};

/// Throws UsageError on an inconsistent configuration.
void validate(const RunConfig& config);

/// Versioned key=value text. Inputs are recorded with their SHA-256.
std::string manifest_text(const RunConfig& config);

std::string sha256_hex(const std::filesystem::path& path);

/// WAV files by extension; anything else is read as one number per line
/// ('#' starts a comment) at 8000 Hz.
AudioBuffer load_signal(const std::filesystem::path& path);

/// A convolution kernel in one domain. Time kernels have at most chunk_size
/// taps; frequency kernels hold M = 2 * chunk_size bins.
struct Kernel {
  std::string name;
  KernelDomain domain = KernelDomain::kTime;
  std::vector<Complex> values;
};

/// identity, shift-K, moving-average-K, low-pass-K, or a path to a file.
Kernel resolve_kernel(std::string_view kernel_spec,
                      std::optional<KernelDomain> file_domain,
                      std::size_t chunk_size);

/// Time-domain taps of `kernel` over M samples.
std::vector<Complex> kernel_time_response(const Kernel& kernel, std::size_t M);
/// Spectrum of `kernel` over M bins.
std::vector<Complex> kernel_spectrum(const Kernel& kernel, std::size_t M);

int run_multiply(const RunConfig& config, std::ostream& log);
int run_convolve(const RunConfig& config, std::ostream& log);
int run_shot_sweep(const RunConfig& config, std::ostream& log);

struct SelftestOptions {
  bool flip_qft_sign = false;
};
int run_selftest(const SelftestOptions& options, std::ostream& log);

/// Validates and dispatches on config.command, mapping exceptions to exit
/// statuses with a message on `err`.
int run_command(const RunConfig& config, std::ostream& log, std::ostream& err);

/// The smooth positive pair used when shot-sweep gets no inputs. g stays
/// within 1e-5 of one, so its t_g = 1 branch is almost never sampled.
std::vector<double> default_sweep_f(std::size_t n);
std::vector<double> default_sweep_g(std::size_t n);

}  // namespace qpte
