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

#include "compass/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace compass {
namespace {

constexpr std::uint64_t kCountMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kCountMax - b ? kCountMax : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kCountMax / b ? kCountMax : a * b;
}

double value_scale(const IsingInstance& instance) {
  double scale = 1.0;
  for (double h : instance.fields()) scale += std::abs(h);
  for (const auto& [edge, value] : instance.couplings()) scale += std::abs(value);
  return scale;
}

void check_permutation(std::size_t n, std::span<const std::size_t> order) {
  if (order.size() != n) {
    throw std::invalid_argument("elimination order has " + std::to_string(order.size()) +
                                " entries, instance has n=" + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t v : order) {
    if (v >= n || seen[v]) {
      throw std::invalid_argument("elimination order is not a permutation of 0..n-1");
    }
    seen[v] = true;
  }
}

// Bit p of a table index is the value of scope[p]; bit 1 means spin +1.
template <class Energy>
struct Factor {
  std::vector<std::size_t> scope;
  std::vector<Energy> energy;
  std::vector<std::uint64_t> count;
};

template <class Energy, class Convert>
OracleResult bucket_eliminate(const IsingInstance& instance,
                              std::span<const std::size_t> order, std::size_t width_cap,
                              Convert to_energy) {
  const std::size_t n = instance.size();
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  std::vector<std::vector<Factor<Energy>>> buckets(n);
  Energy constant_energy{};
  std::uint64_t constant_count = 1;

  auto place = [&](Factor<Energy> f) {
    if (f.scope.empty()) {
      constant_energy += f.energy[0];
      constant_count = sat_mul(constant_count, f.count[0]);
      return;
    }
    const auto first = *std::min_element(f.scope.begin(), f.scope.end(),
                                         [&](std::size_t a, std::size_t b) {
                                           return position[a] < position[b];
                                         });
    buckets[first].push_back(std::move(f));
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double h = instance.field(i);
    if (h == 0.0) continue;
    place(Factor<Energy>{{i}, {to_energy(h), to_energy(-h)}, {1, 1}});
  }
  for (const auto& [edge, value] : instance.couplings()) {
    // index = s_i bit | s_j bit << 1; aligned pairs are 0b00 and 0b11.
    const Energy aligned = to_energy(-value);
    const Energy anti = to_energy(value);
    place(Factor<Energy>{{edge.first, edge.second}, {aligned, anti, anti, aligned}, {1, 1, 1, 1}});
  }

  std::size_t width = 0;
  for (std::size_t v : order) {
    auto bucket = std::move(buckets[v]);
    if (bucket.empty()) {
      constant_count = sat_mul(constant_count, 2);
      continue;
    }

    std::vector<std::size_t> scope;
    for (const auto& f : bucket) {
      for (std::size_t u : f.scope) {
        if (u != v) scope.push_back(u);
      }
    }
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    width = std::max(width, scope.size());
    if (scope.size() > width_cap) {
      throw OracleCapError("elimination of spin " + std::to_string(v) + " needs a scope of " +
                           std::to_string(scope.size()) + " spins, cap is " +
                           std::to_string(width_cap));
    }

    // For each factor: where each of its scope bits comes from in the new
    // table index, and which bit carries v.
    struct Gather {
      std::vector<std::pair<std::size_t, std::size_t>> bits;  // (src bit in new, dst bit)
      std::size_t v_mask = 0;
    };
    std::vector<Gather> gathers(bucket.size());
    for (std::size_t fi = 0; fi < bucket.size(); ++fi) {
      const auto& fs = bucket[fi].scope;
      for (std::size_t p = 0; p < fs.size(); ++p) {
        if (fs[p] == v) {
          gathers[fi].v_mask = std::size_t{1} << p;
        } else {
          const auto src = static_cast<std::size_t>(
              std::lower_bound(scope.begin(), scope.end(), fs[p]) - scope.begin());
          gathers[fi].bits.emplace_back(src, p);
        }
      }
    }

    const std::size_t entries = std::size_t{1} << scope.size();
    Factor<Energy> message{scope, std::vector<Energy>(entries), std::vector<std::uint64_t>(entries)};
    for (std::size_t a = 0; a < entries; ++a) {
      Energy e[2]{};
      std::uint64_t c[2]{1, 1};
      for (std::size_t fi = 0; fi < bucket.size(); ++fi) {
        std::size_t base = 0;
        for (const auto& [src, dst] : gathers[fi].bits) base |= ((a >> src) & 1U) << dst;
        const auto& f = bucket[fi];
        e[0] += f.energy[base];
        c[0] = sat_mul(c[0], f.count[base]);
        const std::size_t up = base | gathers[fi].v_mask;
        e[1] += f.energy[up];
        c[1] = sat_mul(c[1], f.count[up]);
      }
      if (e[0] < e[1]) {
        message.energy[a] = e[0];
        message.count[a] = c[0];
      } else if (e[1] < e[0]) {
        message.energy[a] = e[1];
        message.count[a] = c[1];
      } else {
        message.energy[a] = e[0];
        message.count[a] = sat_add(c[0], c[1]);
      }
    }
    place(std::move(message));
  }

  OracleResult result;
  result.ground_energy = static_cast<double>(constant_energy);
  result.degeneracy = constant_count;
  result.induced_width = width;
  return result;
}

}  // namespace

OracleResult brute_force_ground(const IsingInstance& instance, bool list_states,
                                std::size_t state_cap) {
  const std::size_t n = instance.size();
  if (n > kBruteForceMaxSpins) {
    throw OracleCapError("brute force is limited to " + std::to_string(kBruteForceMaxSpins) +
                         " spins, instance has " + std::to_string(n));
  }
  const NeighborTable nb(instance);
  const bool integral = instance.has_integral_values();
  const double tol = integral ? 0.0 : 1e-9 * value_scale(instance);

  SpinConfig spins(n, -1);
  double energy = ising_energy(instance, spins);
  double best = energy;
  SpinConfig best_state = spins;
  std::uint64_t count = 1;
  std::vector<SpinConfig> states;
  bool overflow = false;
  if (list_states) states.push_back(spins);

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < total; ++g) {
    const auto k = static_cast<std::size_t>(std::countr_zero(g));
    double local = instance.field(k);
    for (std::size_t e = nb.begin(k); e < nb.end(k); ++e) {
      local += nb.weight[e] * spins[nb.index[e]];
    }
    energy += 2.0 * spins[k] * local;
    spins[k] = static_cast<Spin>(-spins[k]);

    if (energy < best - tol) {
      best = energy;
      best_state = spins;
      count = 1;
      states.clear();
      overflow = false;
      if (list_states) states.push_back(spins);
    } else if (energy <= best + tol) {
      ++count;
      if (list_states && !overflow) {
        if (states.size() < state_cap) {
          states.push_back(spins);
        } else {
          overflow = true;
          states.clear();
        }
      }
    }
  }

  OracleResult result;
  result.ground_energy = integral ? best : ising_energy(instance, best_state);
  result.degeneracy = count;
  if (list_states && !overflow) {
    std::sort(states.begin(), states.end());
    result.states = std::move(states);
  }
  return result;
}

OracleResult exact_ground_dp(const IsingInstance& instance,
                             std::span<const std::size_t> order, std::size_t width_cap) {
  check_permutation(instance.size(), order);
  if (instance.has_integral_values()) {
    return bucket_eliminate<std::int64_t>(instance, order, width_cap, [](double x) {
      return static_cast<std::int64_t>(std::llround(x));
    });
  }
  // Real-valued instances: ties compare exactly in double. Degeneracy is
  // only meaningful when distinct minimizers sum to bit-identical energies.
  return bucket_eliminate<double>(instance, order, width_cap, [](double x) { return x; });
}

std::size_t induced_width(const Graph& graph, std::span<const std::size_t> order) {
  check_permutation(graph.num_nodes, order);
  std::vector<std::set<std::size_t>> adj(graph.num_nodes);
  for (const auto& [u, v] : graph.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::size_t width = 0;
  for (std::size_t v : order) {
    const auto nbrs = std::move(adj[v]);
    width = std::max(width, nbrs.size());
    for (std::size_t a : nbrs) {
      adj[a].erase(v);
      for (std::size_t b : nbrs) {
        if (a != b) adj[a].insert(b);
      }
    }
  }
  return width;
}

std::vector<std::size_t> default_chimera_order(const ChimeraSpec& spec) {
  const auto chimera = generate_chimera(spec);
  constexpr std::size_t kInactive = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> compact(spec.physical_size(), kInactive);
  for (std::size_t c = 0; c < chimera.physical.size(); ++c) compact[chimera.physical[c]] = c;

  std::vector<std::size_t> order;
  order.reserve(chimera.physical.size());
  auto emit_cell = [&](std::size_t r, std::size_t c, std::size_t first_side) {
    for (std::size_t side : {first_side, 1 - first_side}) {
      for (std::size_t k = 0; k < spec.shore; ++k) {
        const auto q = compact[spec.physical_index(r, c, side, k)];
        if (q != kInactive) order.push_back(q);
      }
    }
  };
  // Sweep so the frontier spans the shorter dimension. The shore that links
  // forward along the sweep goes first.
  if (spec.rows >= spec.cols) {
    for (std::size_t r = 0; r < spec.rows; ++r) {
      for (std::size_t c = 0; c < spec.cols; ++c) emit_cell(r, c, 0);
    }
  } else {
    for (std::size_t c = 0; c < spec.cols; ++c) {
      for (std::size_t r = 0; r < spec.rows; ++r) emit_cell(r, c, 1);
    }
  }
  return order;
}

std::vector<std::size_t> min_degree_order(const Graph& graph) {
  std::vector<std::set<std::size_t>> adj(graph.num_nodes);
  for (const auto& [u, v] : graph.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<bool> done(graph.num_nodes, false);
  std::vector<std::size_t> order;
  order.reserve(graph.num_nodes);
  for (std::size_t step = 0; step < graph.num_nodes; ++step) {
    std::size_t pick = graph.num_nodes;
    for (std::size_t v = 0; v < graph.num_nodes; ++v) {
      if (!done[v] && (pick == graph.num_nodes || adj[v].size() < adj[pick].size())) pick = v;
    }
    done[pick] = true;
    order.push_back(pick);
    const auto nbrs = std::move(adj[pick]);
    for (std::size_t a : nbrs) {
      adj[a].erase(pick);
      for (std::size_t b : nbrs) {
        if (a != b) adj[a].insert(b);
      }
    }
  }
  return order;
}

OracleResult solve_ground(const IsingInstance& instance,
                          std::optional<std::span<const std::size_t>> order,
                          std::size_t width_cap) {
  if (!order && instance.size() <= 16) return brute_force_ground(instance);
  if (order) return exact_ground_dp(instance, *order, width_cap);
  const auto greedy = min_degree_order(instance.graph());
  return exact_ground_dp(instance, greedy, width_cap);
}

}  // namespace compass
