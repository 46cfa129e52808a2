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

// qpte: point-wise multiplication and convolution of signals on a simulated
// quantum register.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "qpte/commands.hpp"

namespace {

struct Flags {
  std::vector<std::string> inputs;
  std::string shots = "exact";
  std::string normalization = "assume-positive";
  std::string kernel_domain;
  std::string shot_list;
  std::string out = "qpte_out";
};

void add_shared(CLI::App* cmd, qpte::RunConfig& config, Flags& flags) {
  cmd->add_option("--chunk-size", config.chunk_size,
                  "Samples per chunk (power of two)")
      ->capture_default_str();
  cmd->add_option("--shots", flags.shots, "Shots per chunk, or 'exact'")
      ->capture_default_str();
  cmd->add_option("--seed", config.seed, "Base RNG seed")->capture_default_str();
  cmd->add_option("--workers", config.workers, "Worker threads")
      ->capture_default_str();
  cmd->add_option("--normalization", flags.normalization,
                  "assume-positive or shift-scale")
      ->check(CLI::IsMember({"assume-positive", "shift-scale"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "Output directory")->capture_default_str();
  cmd->add_flag("--mutate-qft-sign", config.mutate_qft_sign)->group("");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum point-wise operations on audio signals (simulated)"};
  app.set_version_flag("--version", std::string(qpte::kVersion));
  app.require_subcommand(1);

  qpte::RunConfig config;
  Flags flags;

  CLI::App* multiply = app.add_subcommand(
      "multiply", "Multiply two signals; writes four component WAVs");
  multiply->add_option("inputs", flags.inputs, "Two WAV or numeric text files");
  add_shared(multiply, config, flags);
  multiply->add_flag("--dump-circuit", config.dump_circuit,
                     "Write the first chunk's encoding gates to circuit.txt");

  CLI::App* convolve = app.add_subcommand(
      "convolve", "Convolve a signal with a kernel, chunk by chunk");
  convolve->add_option("input", flags.inputs, "WAV or numeric text file");
  add_shared(convolve, config, flags);
  convolve->add_option(
      "--kernel", config.kernel,
      "identity | shift-K | moving-average-K | low-pass-K | <file>");
  convolve->add_option("--kernel-domain", flags.kernel_domain,
                       "Domain of a kernel file: time or frequency")
      ->check(CLI::IsMember({"time", "frequency"}));

  CLI::App* sweep = app.add_subcommand(
      "shot-sweep", "RMSD and fidelity against shot count for one chunk pair");
  sweep->add_option("inputs", flags.inputs,
                    "Optional pair of chunk-size signals (built-in pair if omitted)");
  add_shared(sweep, config, flags);
  CLI::Option* shot_list_opt = sweep->add_option("--shot-list", flags.shot_list,
                    "Comma-separated shots, e.g. 1e1,1e2,exact (default 1e1..1e7)");
  sweep->add_option("--seeds", config.seeds, "Seeds per shot count")
      ->capture_default_str();

  CLI::App* selftest =
      app.add_subcommand("selftest", "Check the simulator against classical oracles");
  selftest->add_flag("--mutate-qft-sign", config.mutate_qft_sign)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? qpte::kExitOk : qpte::kExitUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    for (const std::string& in : flags.inputs) config.inputs.emplace_back(in);
    config.shots = qpte::parse_shots(flags.shots);
    config.normalization = qpte::parse_normalization(flags.normalization);
    config.out = flags.out;
    if (!flags.kernel_domain.empty()) {
      config.kernel_domain = qpte::parse_kernel_domain(flags.kernel_domain);
    }
    if (shot_list_opt->count() > 0) {
      config.shot_list = qpte::parse_shot_list(flags.shot_list);
    }
  } catch (const std::exception& e) {
    std::cerr << "qpte: " << e.what() << '\n';
    return qpte::kExitUsage;
  }
  return qpte::run_command(config, std::cout, std::cerr);
}
