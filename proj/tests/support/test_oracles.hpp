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

// Reference computations used only by tests. They deliberately avoid the
// library's fast paths (neighbour tables, Gray codes, elimination) so that
// they can serve as independent checks.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "compass/chimera.hpp"
#include "compass/instance.hpp"

namespace compass::testing {

/// E(s) = -sum h_i s_i - 1/2 sum_{i != j} J_ij s_i s_j over all ordered pairs.
inline double reference_energy(const IsingInstance& inst, const std::vector<int>& s) {
  double e = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    e -= inst.field(i) * s[i];
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (i != j) e -= 0.5 * inst.coupling(i, j) * s[i] * s[j];
    }
  }
  return e;
}

struct ReferenceGround {
  double energy = std::numeric_limits<double>::infinity();
  std::uint64_t degeneracy = 0;
  std::vector<std::vector<int>> states;
};

/// Plain binary-counter enumeration; tolerance 1e-9 for ties.
inline ReferenceGround reference_ground(const IsingInstance& inst) {
  ReferenceGround out;
  const std::size_t n = inst.size();
  std::vector<int> s(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) s[i] = ((mask >> i) & 1U) ? 1 : -1;
    const double e = reference_energy(inst, s);
    if (e < out.energy - 1e-9) {
      out.energy = e;
      out.degeneracy = 1;
      out.states = {s};
    } else if (std::abs(e - out.energy) <= 1e-9) {
      ++out.degeneracy;
      out.states.push_back(s);
    }
  }
  return out;
}

/// V = A (-Bx sum sin) + B (-sum h cos - 1/2 sum_{i != j} J cos cos).
inline double reference_potential(const IsingInstance& inst, const std::vector<double>& theta,
                                  double a, double b, double bx) {
  double vt = 0.0;
  double vi = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    vt -= std::sin(theta[i]) * bx;
    vi -= std::cos(theta[i]) * inst.field(i);
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (i != j) vi -= 0.5 * std::cos(theta[i]) * std::cos(theta[j]) * inst.coupling(i, j);
    }
  }
  return a * vt + b * vi;
}

/// Chimera adjacency decided from coordinates alone.
inline bool reference_chimera_adjacent(const ChimeraSpec& spec, std::size_t p, std::size_t q) {
  auto decode = [&](std::size_t x) {
    struct C {
      std::size_t row, col, side, k;
    } c{};
    c.k = x % spec.shore;
    c.side = (x / spec.shore) % 2;
    const std::size_t cell = x / (2 * spec.shore);
    c.row = cell / spec.cols;
    c.col = cell % spec.cols;
    return c;
  };
  const auto a = decode(p);
  const auto b = decode(q);
  if (a.row == b.row && a.col == b.col) return a.side != b.side;
  if (a.side != b.side || a.k != b.k) return false;
  if (a.side == 0) return a.col == b.col && (a.row + 1 == b.row || b.row + 1 == a.row);
  return a.row == b.row && (a.col + 1 == b.col || b.col + 1 == a.col);
}

/// Random instance on a random graph with max degree `max_degree`.
inline IsingInstance random_sparse_instance(std::size_t n, std::size_t max_degree,
                                            double edge_prob, bool pm1_fields,
                                            std::mt19937_64& rng) {
  IsingInstance inst(n);
  std::vector<std::size_t> deg(n, 0);
  std::bernoulli_distribution edge(edge_prob);
  std::bernoulli_distribution sign(0.5);
  std::uniform_int_distribution<int> field(-1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (pm1_fields) inst.set_field(i, field(rng));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (deg[i] < max_degree && deg[j] < max_degree && edge(rng)) {
        inst.add_coupling(i, j, sign(rng) ? 1.0 : -1.0);
        ++deg[i];
        ++deg[j];
      }
    }
  }
  return inst;
}

}  // namespace compass::testing
