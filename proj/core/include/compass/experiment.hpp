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
#include <span>
#include <vector>

#include "compass/batch.hpp"
#include "compass/chimera.hpp"
#include "compass/dynamics.hpp"
#include "compass/oracle.hpp"
#include "compass/readout.hpp"

namespace compass {

struct CompassRunConfig {
  DragConfig drag;
  NoiseSpec noise;
  double tie_epsilon = kDefaultTieEpsilon;
};

/// One seeded drag of `item`, projected and scored. The run's RNG supplies
/// the kicks first and then the projection tie-breaks.
RunRecord compass_run(const BatchInstance& item, const CompassModel& model,
                      const CompassRunConfig& config, std::size_t run_id,
                      std::uint64_t master_seed);

/// `runs` drags per instance, spread over `workers` threads. Output is
/// sorted by (instance_id, run_id) and does not depend on `workers`.
std::vector<RunRecord> compass_batch(std::span<const BatchInstance> instances,
                                     const CompassRunConfig& config, std::size_t runs,
                                     std::uint64_t master_seed, std::size_t workers = 1);

/// `count` random +-1 instances on generate_chimera(spec); instance i uses
/// seed derive_seed(seed, i, 0) and is solved with default_chimera_order.
std::vector<BatchInstance> chimera_instance_set(const ChimeraSpec& spec, std::size_t count,
                                                std::uint64_t seed,
                                                std::size_t width_cap = kDefaultWidthCap,
                                                std::size_t workers = 1);

/// Solves each instance with solve_ground and numbers them 0..n-1.
std::vector<BatchInstance> prepare_batch(std::vector<IsingInstance> instances,
                                         std::size_t width_cap = kDefaultWidthCap);

struct BatchSummary {
  std::vector<double> success_probabilities;
  HistogramSummary histogram;
  std::size_t instances_with_success = 0;
};

BatchSummary summarize(std::span<const RunRecord> records, std::size_t n_bins);

}  // namespace compass
