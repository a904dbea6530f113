// Copyright 2026 The egoradar Authors
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


#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "egoradar/cli/commands.hpp"

namespace cli = egoradar::cli;

namespace {

void add_config_flags(CLI::App* cmd, cli::ConfigArgs& cfg) {
  cmd->add_option("--config", cfg.config, "Radar config file (key = value)")->check(CLI::ExistingFile);
  cmd->add_option("--gates", cfg.gates, "Range gates, e.g. 0.3:0.9,0.9:1.5");
  cmd->add_option("--tau-ms", cfg.tau_ms, "Window gap threshold in ms");
}

void add_stage_flags(CLI::App* cmd, cli::StageFlags& stages) {
  cmd->add_flag("--no-mti", stages.no_mti, "Disable the MTI filter");
  cmd->add_flag("--no-clutter", stages.no_clutter, "Disable chirp-mean clutter removal");
  cmd->add_flag("--no-compensation", stages.no_compensation, "Disable per-range energy compensation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-view FMCW radar simulator and point-cloud pipeline"};
  app.require_subcommand(1);

  cli::SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate left/right captures from a scene file");
  simulate->add_option("scene", sim.scene, "Scene file")->required();
  add_config_flags(simulate, sim.config);
  simulate->add_option("--duration", sim.duration_s, "Seconds to simulate")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Noise and jitter seed")->capture_default_str();
  simulate->add_option("--out", sim.out_dir, "Output directory")->capture_default_str();

  cli::ProcessArgs proc;
  auto* process = app.add_subcommand("process", "Turn a pair of captures into fused point clouds");
  process->add_option("left", proc.left, "Left capture")->required()->check(CLI::ExistingFile);
  process->add_option("right", proc.right, "Right capture")->required()->check(CLI::ExistingFile);
  add_config_flags(process, proc.config);
  add_stage_flags(process, proc.stages);
  process->add_option("--max-skew-ms", proc.max_skew_ms, "Pairing skew bound in ms")->capture_default_str();
  process->add_option("--format", proc.formats, "Outputs: csv, ply, tensor (repeatable)")
      ->check(CLI::IsMember({"csv", "ply", "tensor"}));
  process->add_option("--out", proc.out_dir, "Output directory")->capture_default_str();

  cli::VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Simulate, process and compare against truth");
  verify->add_option("scene", ver.scene, "Scene file")->required();
  add_config_flags(verify, ver.config);
  add_stage_flags(verify, ver.stages);
  verify->add_option("--seed", ver.seed, "Noise and jitter seed")->capture_default_str();
  verify->add_option("--duration", ver.duration_s, "Seconds to simulate")->capture_default_str();
  verify->add_option("--max-skew-ms", ver.max_skew_ms, "Pairing skew bound in ms")->capture_default_str();
  verify->add_option("--out", ver.out_dir, "Write verify.json here");
  verify->add_flag("--corrupt-dbf", ver.corrupt_dbf)->group("");

  cli::ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "Convert a feature tensor file");
  export_cmd->add_option("tensor", exp.tensor, "Feature tensor file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--format", exp.format, "csv, ply or tensor")
      ->check(CLI::IsMember({"csv", "ply", "tensor"}))
      ->capture_default_str();
  export_cmd->add_option("--out", exp.out, "Output file (csv, tensor) or directory (ply)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  if (*simulate) return cli::simulate(sim, std::cout, std::cerr);
  if (*process) return cli::process(proc, std::cout, std::cerr);
  if (*verify) return cli::verify(ver, std::cout, std::cerr);
  if (*export_cmd) return cli::export_tensor(exp, std::cout, std::cerr);
  return cli::kExitError;
}
