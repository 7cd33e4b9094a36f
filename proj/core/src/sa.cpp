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

#include "compass/sa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace compass {

void SASchedule::validate() const {
  if (!(beta_start >= 0.0) || !(beta_end >= beta_start) || !std::isfinite(beta_end)) {
    throw std::invalid_argument("SA schedule needs 0 <= beta_start <= beta_end");
  }
  if (sweeps < 1) throw std::invalid_argument("SA schedule needs sweeps >= 1");
  if (shape == BetaShape::kGeometric && !(beta_start > 0.0)) {
    throw std::invalid_argument("geometric SA schedule needs beta_start > 0");
  }
}

double SASchedule::beta_at(std::size_t sweep) const {
  if (sweeps <= 1) return beta_start;
  const double s = static_cast<double>(sweep) / static_cast<double>(sweeps - 1);
  if (shape == BetaShape::kGeometric) return beta_start * std::pow(beta_end / beta_start, s);
  return beta_start + (beta_end - beta_start) * s;
}

MetropolisChain::MetropolisChain(const IsingInstance& instance, SpinConfig initial)
    : neighbors_(instance),
      fields_(instance.fields().begin(), instance.fields().end()),
      spins_(std::move(initial)),
      energy_(ising_energy(instance, spins_)) {}

void MetropolisChain::propose(std::size_t i, double beta, Rng& rng) {
  double local = fields_[i];
  for (std::size_t k = neighbors_.begin(i); k < neighbors_.end(i); ++k) {
    local += neighbors_.weight[k] * spins_[neighbors_.index[k]];
  }
  const double delta = 2.0 * spins_[i] * local;
  if (delta <= 0.0 || uniform01(rng) < std::exp(-beta * delta)) {
    spins_[i] = static_cast<Spin>(-spins_[i]);
    energy_ += delta;
  }
}

void MetropolisChain::sweep(double beta, Rng& rng, ProposalOrder order) {
  const std::size_t n = spins_.size();
  if (order == ProposalOrder::kSequential) {
    for (std::size_t i = 0; i < n; ++i) propose(i, beta, rng);
    return;
  }
  // Modulo bias is < n / 2^64.
  for (std::size_t k = 0; k < n; ++k) propose(static_cast<std::size_t>(rng() % n), beta, rng);
}

SpinConfig sa_run(const IsingInstance& instance, const SASchedule& schedule,
                  std::uint64_t seed) {
  schedule.validate();
  Rng rng(seed);
  SpinConfig start(instance.size());
  for (auto& s : start) s = coin(rng) ? 1 : -1;
  MetropolisChain chain(instance, std::move(start));
  for (std::size_t k = 0; k < schedule.sweeps; ++k) chain.sweep(schedule.beta_at(k), rng, schedule.order);
  return chain.spins();
}

std::vector<RunRecord> sa_batch(std::span<const BatchInstance> instances,
                                const SASchedule& schedule, std::size_t runs,
                                std::uint64_t master_seed, std::size_t workers) {
  schedule.validate();
  std::vector<RunRecord> records(instances.size() * runs);
  parallel_for(records.size(), workers, [&](std::size_t k) {
    const auto& item = instances[k / runs];
    RunRecord& rec = records[k];
    rec.instance_id = item.id;
    rec.run_id = k % runs;
    rec.seed = derive_seed(master_seed, item.id, rec.run_id);
    rec.projected = sa_run(item.instance, schedule, rec.seed);
    rec.final_energy = ising_energy(item.instance, rec.projected);
    rec.ground_energy = item.ground_energy;
    rec.success = energy_matches(rec.final_energy, item.ground_energy,
                                 item.instance.has_integral_values());
  });
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.instance_id != b.instance_id ? a.instance_id < b.instance_id : a.run_id < b.run_id;
  });
  return records;
}

}  // namespace compass
