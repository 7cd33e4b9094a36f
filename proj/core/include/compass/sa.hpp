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
#include "compass/instance.hpp"
#include "compass/readout.hpp"
#include "compass/rng.hpp"

namespace compass {

enum class BetaShape { kLinear, kGeometric };

/// How a sweep picks its n proposals.
enum class ProposalOrder {
  kRandomSite,  ///< n sites drawn uniformly with replacement
  kSequential,  ///< every site once, in index order
};

/// Inverse-temperature ramp, one value per sweep.
///
/// Sequential sweeps on the eight-spin gadget update all cores before any
/// ancilla and end up biased toward the cluster states; random-site
/// proposals do not have that artefact, hence the default.
struct SASchedule {
  double beta_start = 0.1;
  double beta_end = 3.0;
  std::size_t sweeps = 100;
  BetaShape shape = BetaShape::kLinear;
  ProposalOrder order = ProposalOrder::kRandomSite;

  /// Throws std::invalid_argument unless 0 <= beta_start <= beta_end and
  /// sweeps >= 1 (and beta_start > 0 for the geometric shape).
  void validate() const;
  double beta_at(std::size_t sweep) const;
};

/// Single-spin-flip Metropolis chain with incrementally tracked energy.
class MetropolisChain {
 public:
  MetropolisChain(const IsingInstance& instance, SpinConfig initial);

  /// n single-flip proposals, each accepted with min(1, exp(-beta dE)).
  void sweep(double beta, Rng& rng, ProposalOrder order = ProposalOrder::kSequential);

  /// Metropolis update of site i.
  void propose(std::size_t i, double beta, Rng& rng);

  const SpinConfig& spins() const { return spins_; }
  double energy() const { return energy_; }

 private:
  NeighborTable neighbors_;
  std::vector<double> fields_;
  SpinConfig spins_;
  double energy_;
};

/// Uniform random start, then schedule.sweeps sweeps. Deterministic in seed.
SpinConfig sa_run(const IsingInstance& instance, const SASchedule& schedule,
                  std::uint64_t seed);

/// `runs` independent SA runs per instance; run (i, r) is seeded by
/// derive_seed(master_seed, id_i, r). Records come back sorted by
/// (instance_id, run_id) regardless of `workers`.
std::vector<RunRecord> sa_batch(std::span<const BatchInstance> instances,
                                const SASchedule& schedule, std::size_t runs,
                                std::uint64_t master_seed, std::size_t workers = 1);

}  // namespace compass
