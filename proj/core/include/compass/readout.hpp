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
#include <span>
#include <string>
#include <vector>

#include "compass/instance.hpp"
#include "compass/rng.hpp"

namespace compass {

inline constexpr double kDefaultTieEpsilon = 1e-6;

/// s_i = sign(cos theta_i); spins with |cos theta_i| <= epsilon are free and
/// get an unbiased coin from `rng`.
SpinConfig project_spins(std::span<const double> theta, double epsilon, Rng& rng);

/// Exact comparison when the instance has integral values, otherwise a
/// relative tolerance of 1e-9.
bool energy_matches(double energy, double ground_energy, bool integral);

struct RunRecord {
  std::size_t instance_id = 0;
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  double final_energy = 0.0;
  double ground_energy = 0.0;
  bool success = false;
  SpinConfig projected;
  double residual_ke = 0.0;

  bool operator==(const RunRecord&) const = default;
};

/// Fraction of successful runs. Throws std::invalid_argument on an empty
/// span or records from more than one instance.
double success_probability(std::span<const RunRecord> records);

/// Success probability per instance id, in increasing id order.
std::vector<double> success_probabilities(std::span<const RunRecord> records);

struct IsolatedClusterStats {
  double p_isolated = 0.0;  ///< p_s: fraction of runs ending all-down
  double p_cluster = 0.0;   ///< p_C: fraction ending with all cores up, / 16
  std::size_t runs = 0;
};

/// Statistics for the eight-spin gadget. Throws std::invalid_argument if a
/// record does not have 8 projected spins.
IsolatedClusterStats isolated_cluster_stats(std::span<const RunRecord> records);

struct HistogramSummary {
  std::vector<double> bin_edges;  ///< n_bins + 1 edges from 0 to 1
  std::vector<std::size_t> counts;
  std::size_t n_instances = 0;

  /// Fraction of values in [0, lo_edge] or [hi_edge, 1].
  double extreme_fraction(double lo_edge, double hi_edge) const;
};

/// Equal-width bins on [0, 1]; 1.0 lands in the last bin. Throws
/// std::invalid_argument for n_bins < 2 or a value outside [0, 1].
HistogramSummary histogram(std::span<const double> values, std::size_t n_bins = 20);

/// Fraction of values that are <= lo or >= hi.
double fraction_outside(std::span<const double> values, double lo, double hi);

// Output -------------------------------------------------------------------

/// Header `instance_id,run_id,seed,final_energy,ground_energy,success,residual_ke`.
void write_records_csv(std::ostream& out, std::span<const RunRecord> records);
std::string records_to_json(std::span<const RunRecord> records);

/// Header `bin_lo,bin_hi,count`.
void write_histogram_csv(std::ostream& out, const HistogramSummary& summary);

/// gnuplot script drawing a histogram CSV as boxes.
std::string histogram_plot_script(const std::string& csv_path, const std::string& title);

/// gnuplot script drawing theta_i(t) for the listed spins of one or more
/// trajectory CSVs.
std::string trajectory_plot_script(const std::vector<std::string>& csv_paths,
                                   const std::vector<std::size_t>& spins,
                                   const std::string& title);

}  // namespace compass
