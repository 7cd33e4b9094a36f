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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace compass {

using Spin = std::int8_t;
using SpinConfig = std::vector<Spin>;

using Edge = std::pair<std::size_t, std::size_t>;
using EdgeList = std::vector<Edge>;

/// Undirected graph on nodes 0..num_nodes-1. Edges are stored with
/// first < second, sorted, without duplicates.
struct Graph {
  std::size_t num_nodes = 0;
  EdgeList edges;

  std::size_t max_degree() const;
  std::vector<std::size_t> degrees() const;
};

/// Ising problem: local fields h_i and symmetric couplings J_ij.
///
/// Energy convention: E(s) = -sum_i h_i s_i - sum_{i<j} J_ij s_i s_j.
/// Omitted fields and couplings are zero. Instances are immutable once
/// handed to solvers and may be shared between threads.
class IsingInstance {
 public:
  using CouplingMap = std::map<Edge, double>;

  IsingInstance() = default;
  explicit IsingInstance(std::size_t n, std::string label = {});

  std::size_t size() const { return fields_.size(); }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  double field(std::size_t i) const { return fields_.at(i); }
  std::span<const double> fields() const { return fields_; }
  void set_field(std::size_t i, double value);

  /// Adds J_ij. Throws std::invalid_argument on i == j, an index out of
  /// range, or a pair that is already present (in either order).
  void add_coupling(std::size_t i, std::size_t j, double value);
  double coupling(std::size_t i, std::size_t j) const;
  const CouplingMap& couplings() const { return couplings_; }

  Graph graph() const;

  /// True when every J is exactly +-1 and every h is in {-1, 0, +1}.
  bool has_ensemble_values() const;

  /// True when every h and J is an integer. Energies of such instances are
  /// exact in double precision, so they compare with ==.
  bool has_integral_values() const;

  bool operator==(const IsingInstance&) const = default;

 private:
  std::vector<double> fields_;
  CouplingMap couplings_;
  std::string label_;
};

/// Compressed neighbour lists (both directions) for hot loops.
struct NeighborTable {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> index;
  std::vector<double> weight;

  explicit NeighborTable(const IsingInstance& instance);

  std::size_t begin(std::size_t i) const { return offsets[i]; }
  std::size_t end(std::size_t i) const { return offsets[i + 1]; }
};

/// Four "core" spins (0-3, h=+1) on a ferromagnetic ring, each with one
/// pendant "ancilla" (4-7, h=-1). All couplings +1. Ground space: the 16
/// states with every core up plus the all-down state.
IsingInstance build_eight_spin_gadget();

/// Each edge gets J=+1 or J=-1 with probability 1/2; h=0. Pure function of
/// (graph, seed).
IsingInstance random_pm1_instance(const Graph& graph, std::uint64_t seed,
                                  std::string label = {});

/// Throws std::invalid_argument on a length mismatch or an entry not +-1.
double ising_energy(const IsingInstance& instance, std::span<const Spin> spins);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Line format, '#' starts a comment:
///   n <spin-count>
///   h <i> <value>
///   J <i> <j> <value>
/// A "# label: <text>" comment line before `n` sets the label.
IsingInstance parse_instance(std::string_view text);
std::string serialize_instance(const IsingInstance& instance);

IsingInstance load_instance(const std::string& path);
void save_instance(const IsingInstance& instance, const std::string& path);

}  // namespace compass
