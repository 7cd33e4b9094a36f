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
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "compass/chimera.hpp"
#include "compass/instance.hpp"

namespace compass {

inline constexpr std::size_t kBruteForceMaxSpins = 24;
inline constexpr std::size_t kDefaultWidthCap = 20;

struct OracleResult {
  double ground_energy = 0.0;
  /// Number of minimizing assignments; saturates at UINT64_MAX.
  std::uint64_t degeneracy = 0;
  /// Filled by brute force when requested and degeneracy <= the cap.
  std::optional<std::vector<SpinConfig>> states;
  /// Largest elimination scope encountered (DP only).
  std::size_t induced_width = 0;
};

/// Raised when a solver limit (spin count, elimination width) is exceeded.
class OracleCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive Gray-code enumeration over all 2^n assignments, n <= 24.
OracleResult brute_force_ground(const IsingInstance& instance, bool list_states = false,
                                std::size_t state_cap = 4096);

/// Min-sum bucket elimination along `order` (a permutation of 0..n-1).
/// Minimizer multiplicities are carried alongside the energies, so the
/// result has the exact degeneracy. Integral instances use 64-bit integer
/// energies. Throws OracleCapError if an elimination scope exceeds
/// `width_cap` variables, std::invalid_argument if `order` is not a
/// permutation.
OracleResult exact_ground_dp(const IsingInstance& instance,
                             std::span<const std::size_t> order,
                             std::size_t width_cap = kDefaultWidthCap);

/// Induced width of `order` on `graph`: the largest number of
/// not-yet-eliminated neighbours a vertex has when it is eliminated.
std::size_t induced_width(const Graph& graph, std::span<const std::size_t> order);

/// Cell-by-cell order (compact indices of generate_chimera(spec)) sweeping
/// along the longer grid dimension. Induced width <= shore * (min(rows, cols) + 1).
std::vector<std::size_t> default_chimera_order(const ChimeraSpec& spec);

/// Greedy minimum-degree order for graphs without known structure.
std::vector<std::size_t> min_degree_order(const Graph& graph);

/// Brute force for small n, otherwise DP along `order` (or a min-degree
/// order if none is given).
OracleResult solve_ground(const IsingInstance& instance,
                          std::optional<std::span<const std::size_t>> order = std::nullopt,
                          std::size_t width_cap = kDefaultWidthCap);

}  // namespace compass
