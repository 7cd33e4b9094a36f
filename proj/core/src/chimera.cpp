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

#include "compass/chimera.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace compass {

ChimeraGraph generate_chimera(const ChimeraSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0 || spec.shore == 0) {
    throw std::invalid_argument("chimera dimensions must be >= 1");
  }
  const std::size_t total = spec.physical_size();
  for (std::size_t q : spec.mask) {
    if (q >= total) {
      throw std::invalid_argument("mask index " + std::to_string(q) +
                                  " out of range for " + std::to_string(total) +
                                  " qubits");
    }
  }

  constexpr std::size_t kInactive = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> compact(total, kInactive);
  ChimeraGraph out;
  for (std::size_t q = 0; q < total; ++q) {
    if (spec.mask.contains(q)) continue;
    compact[q] = out.physical.size();
    out.physical.push_back(q);
  }
  out.graph.num_nodes = out.physical.size();

  auto link = [&](std::size_t a, std::size_t b) {
    if (compact[a] == kInactive || compact[b] == kInactive) return;
    out.graph.edges.emplace_back(std::minmax(compact[a], compact[b]));
  };

  for (std::size_t r = 0; r < spec.rows; ++r) {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      for (std::size_t a = 0; a < spec.shore; ++a) {
        for (std::size_t b = 0; b < spec.shore; ++b) {
          link(spec.physical_index(r, c, 0, a), spec.physical_index(r, c, 1, b));
        }
      }
      for (std::size_t k = 0; k < spec.shore; ++k) {
        if (r + 1 < spec.rows) {
          link(spec.physical_index(r, c, 0, k), spec.physical_index(r + 1, c, 0, k));
        }
        if (c + 1 < spec.cols) {
          link(spec.physical_index(r, c, 1, k), spec.physical_index(r, c + 1, 1, k));
        }
      }
    }
  }
  std::sort(out.graph.edges.begin(), out.graph.edges.end());
  return out;
}

}  // namespace compass
