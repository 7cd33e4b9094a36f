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

#include "compass/experiment.hpp"

#include <algorithm>
#include <string>

namespace compass {

RunRecord compass_run(const BatchInstance& item, const CompassModel& model,
                      const CompassRunConfig& config, std::size_t run_id,
                      std::uint64_t master_seed) {
  RunRecord rec;
  rec.instance_id = item.id;
  rec.run_id = run_id;
  rec.seed = derive_seed(master_seed, item.id, run_id);
  Rng rng(rec.seed);
  const auto result = run_drag(model, config.drag, config.noise, rng);
  rec.projected = project_spins(result.final_state.theta, config.tie_epsilon, rng);
  rec.final_energy = ising_energy(item.instance, rec.projected);
  rec.ground_energy = item.ground_energy;
  rec.success = energy_matches(rec.final_energy, item.ground_energy,
                               item.instance.has_integral_values());
  rec.residual_ke = result.diagnostics.residual_ke;
  return rec;
}

std::vector<RunRecord> compass_batch(std::span<const BatchInstance> instances,
                                     const CompassRunConfig& config, std::size_t runs,
                                     std::uint64_t master_seed, std::size_t workers) {
  config.drag.validate();
  if (config.noise.enabled) config.noise.validate();
  std::vector<CompassModel> models;
  models.reserve(instances.size());
  for (const auto& item : instances) models.emplace_back(item.instance);

  std::vector<RunRecord> records(instances.size() * runs);
  parallel_for(records.size(), workers, [&](std::size_t k) {
    const std::size_t i = k / runs;
    records[k] = compass_run(instances[i], models[i], config, k % runs, master_seed);
  });
  std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.instance_id != b.instance_id ? a.instance_id < b.instance_id : a.run_id < b.run_id;
  });
  return records;
}

std::vector<BatchInstance> chimera_instance_set(const ChimeraSpec& spec, std::size_t count,
                                                std::uint64_t seed, std::size_t width_cap,
                                                std::size_t workers) {
  const auto chimera = generate_chimera(spec);
  const auto order = default_chimera_order(spec);
  std::vector<BatchInstance> out(count);
  parallel_for(count, workers, [&](std::size_t i) {
    const std::string label = "chimera-" + std::to_string(spec.rows) + "x" +
                              std::to_string(spec.cols) + "x" + std::to_string(spec.shore) +
                              "-" + std::to_string(i);
    out[i].id = i;
    out[i].instance = random_pm1_instance(chimera.graph, derive_seed(seed, i, 0), label);
    out[i].ground_energy = exact_ground_dp(out[i].instance, order, width_cap).ground_energy;
  });
  return out;
}

std::vector<BatchInstance> prepare_batch(std::vector<IsingInstance> instances,
                                         std::size_t width_cap) {
  std::vector<BatchInstance> out;
  out.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const double ground = solve_ground(instances[i], std::nullopt, width_cap).ground_energy;
    out.push_back(BatchInstance{i, std::move(instances[i]), ground});
  }
  return out;
}

BatchSummary summarize(std::span<const RunRecord> records, std::size_t n_bins) {
  BatchSummary out;
  out.success_probabilities = success_probabilities(records);
  out.histogram = histogram(out.success_probabilities, n_bins);
  out.instances_with_success = static_cast<std::size_t>(
      std::count_if(out.success_probabilities.begin(), out.success_probabilities.end(),
                    [](double p) { return p > 0.0; }));
  return out;
}

}  // namespace compass
