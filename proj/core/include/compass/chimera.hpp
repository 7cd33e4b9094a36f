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
#include <set>
#include <vector>

#include "compass/instance.hpp"

namespace compass {

/// Grid of rows x cols unit cells, each a complete bipartite K_{shore,shore}.
/// Left-shore qubits couple vertically to the same position in the cell
/// below; right-shore qubits couple horizontally to the cell on the right.
///
/// Physical index of (row, col, side, k) is
///   ((row * cols + col) * 2 + side) * shore + k,  side 0 = left, 1 = right.
struct ChimeraSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t shore = 4;
  std::set<std::size_t> mask;  ///< disabled physical indices

  std::size_t physical_size() const { return rows * cols * 2 * shore; }
  std::size_t physical_index(std::size_t row, std::size_t col, std::size_t side,
                             std::size_t k) const {
    return ((row * cols + col) * 2 + side) * shore + k;
  }
};

/// Active qubits renumbered 0..n-1 in increasing physical order.
struct ChimeraGraph {
  Graph graph;
  std::vector<std::size_t> physical;  ///< compact index -> physical index
};

/// Throws std::invalid_argument when a dimension is zero or a mask index is
/// out of range.
ChimeraGraph generate_chimera(const ChimeraSpec& spec);

}  // namespace compass
