// Copyright 2026 The compass-drag Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "compass/chimera.hpp"
#include "compass/dynamics.hpp"
#include "compass/oracle.hpp"
#include "compass/readout.hpp"
#include "compass/sa.hpp"

namespace compass::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitDivergence = 2,
  kExitOracleCap = 3,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string mode;

  // Instance source: explicit files, the eight-spin gadget, or generated
  // random +-1 Chimera instances.
  std::vector<std::string> instance_files;
  std::string instance_dir;
  bool gadget = false;
  ChimeraSpec chimera{3, 3, 4, {}};
  std::size_t instances = 100;
  std::uint64_t instance_seed = 1;

  DragConfig drag = DragConfig::with_duration(1000.0);
  NoiseSpec noise;
  SASchedule sa;
  double tie_epsilon = kDefaultTieEpsilon;
  std::size_t width_cap = kDefaultWidthCap;

  std::size_t runs = 1;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
  std::size_t bins = 20;
  std::size_t trajectory_stride = 100;
  std::string out_dir = "out";
  std::string format = "csv";
};

/// Parses argv and dispatches to a subcommand. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Three reference drags of the gadget (noiseless T=1000, kicked T=1000,
/// noiseless T=200) with trajectories, plus a `runs`-run batch with the
/// configured drag and noise scored for p_s / p_C.
int cmd_gadget8(const ExperimentConfig& config, std::ostream& log);

/// Oracle solve, then `runs` compass drags per instance; records,
/// success probabilities, histogram, plot script and summary.
int cmd_bench(const ExperimentConfig& config, std::ostream& log);

/// As cmd_bench with simulated annealing in place of the compass model.
int cmd_sa(const ExperimentConfig& config, std::ostream& log);

/// Ground energy and degeneracy per instance.
int cmd_exact(const ExperimentConfig& config, std::ostream& log);

/// Writes the instance set as text files.
int cmd_gen(const ExperimentConfig& config, std::ostream& log);

}  // namespace compass::cli
