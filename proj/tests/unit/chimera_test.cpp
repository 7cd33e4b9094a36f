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

#include "gtest/gtest.h"
#include "test_oracles.hpp"

namespace compass {
namespace {

// Edge set by testing every physical pair against the coordinate rule.
EdgeList enumerate_edges(const ChimeraSpec& spec) {
  EdgeList out;
  for (std::size_t p = 0; p < spec.physical_size(); ++p) {
    for (std::size_t q = p + 1; q < spec.physical_size(); ++q) {
      if (testing::reference_chimera_adjacent(spec, p, q)) out.emplace_back(p, q);
    }
  }
  return out;
}

TEST(ChimeraTest, SingleCell) {
  const auto c = generate_chimera(ChimeraSpec{1, 1, 4, {}});
  EXPECT_EQ(c.graph.num_nodes, 8u);
  EXPECT_EQ(c.graph.edges.size(), 16u);
}

TEST(ChimeraTest, TwoByTwoMatchesEnumeration) {
  const ChimeraSpec spec{2, 2, 4, {}};
  const auto c = generate_chimera(spec);
  EXPECT_EQ(c.graph.num_nodes, 32u);
  EXPECT_EQ(c.graph.edges.size(), 80u);
  EXPECT_EQ(c.graph.edges, enumerate_edges(spec));
}

TEST(ChimeraTest, MaskedLeftShoreSpin) {
  const auto c = generate_chimera(ChimeraSpec{1, 1, 4, {0}});
  EXPECT_EQ(c.graph.num_nodes, 7u);
  EXPECT_EQ(c.graph.edges.size(), 12u);
  EXPECT_EQ(c.physical.front(), 1u);
}

TEST(ChimeraTest, MaskOutOfRange) {
  EXPECT_THROW(generate_chimera(ChimeraSpec{1, 1, 4, {8}}), std::invalid_argument);
  EXPECT_THROW(generate_chimera(ChimeraSpec{0, 1, 4, {}}), std::invalid_argument);
}

TEST(ChimeraTest, DegreeAtMostSixAndCountsForManyShapes) {
  for (std::size_t rows = 1; rows <= 4; ++rows) {
    for (std::size_t cols = 1; cols <= 4; ++cols) {
      const ChimeraSpec spec{rows, cols, 4, {}};
      const auto c = generate_chimera(spec);
      EXPECT_EQ(c.graph.num_nodes, rows * cols * 8);
      EXPECT_LE(c.graph.max_degree(), 6u);
      const std::size_t expected = rows * cols * 16 + 4 * (rows - 1) * cols + 4 * rows * (cols - 1);
      EXPECT_EQ(c.graph.edges.size(), expected);
      EXPECT_EQ(c.graph.edges, enumerate_edges(spec));
    }
  }
}

TEST(ChimeraTest, MaskRenumbersAndDropsIncidentEdges) {
  const ChimeraSpec full{4, 4, 4, {}};
  // 20 disabled qubits, 108 active.
  ChimeraSpec masked = full;
  for (std::size_t q = 0; q < 128; q += 6) {
    if (masked.mask.size() < 20) masked.mask.insert(q);
  }
  const auto c = generate_chimera(masked);
  EXPECT_EQ(c.graph.num_nodes, 108u);
  EXPECT_LE(c.graph.max_degree(), 6u);
  EdgeList expected;
  for (const auto& [p, q] : enumerate_edges(full)) {
    if (masked.mask.contains(p) || masked.mask.contains(q)) continue;
    const auto cp = std::lower_bound(c.physical.begin(), c.physical.end(), p) - c.physical.begin();
    const auto cq = std::lower_bound(c.physical.begin(), c.physical.end(), q) - c.physical.begin();
    expected.emplace_back(cp, cq);
  }
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(c.graph.edges, expected);
}

}  // namespace
}  // namespace compass
