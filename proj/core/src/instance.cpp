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

#include "compass/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "compass/format.hpp"
#include "compass/rng.hpp"

namespace compass {

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(num_nodes, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::size_t Graph::max_degree() const {
  const auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

IsingInstance::IsingInstance(std::size_t n, std::string label)
    : fields_(n, 0.0), label_(std::move(label)) {}

void IsingInstance::set_field(std::size_t i, double value) {
  if (i >= size()) {
    throw std::invalid_argument("field index " + std::to_string(i) +
                                " out of range for n=" + std::to_string(size()));
  }
  fields_[i] = value;
}

void IsingInstance::add_coupling(std::size_t i, std::size_t j, double value) {
  if (i == j) {
    throw std::invalid_argument("self-coupling on spin " + std::to_string(i));
  }
  if (i >= size() || j >= size()) {
    throw std::invalid_argument("coupling (" + std::to_string(i) + "," +
                                std::to_string(j) + ") out of range for n=" +
                                std::to_string(size()));
  }
  const Edge key = std::minmax(i, j);
  if (!couplings_.emplace(key, value).second) {
    throw std::invalid_argument("duplicate coupling (" + std::to_string(key.first) +
                                "," + std::to_string(key.second) + ")");
  }
}

double IsingInstance::coupling(std::size_t i, std::size_t j) const {
  const auto it = couplings_.find(std::minmax(i, j));
  return it == couplings_.end() ? 0.0 : it->second;
}

Graph IsingInstance::graph() const {
  Graph g{size(), {}};
  g.edges.reserve(couplings_.size());
  for (const auto& [edge, value] : couplings_) g.edges.push_back(edge);
  return g;
}

bool IsingInstance::has_ensemble_values() const {
  for (double h : fields_) {
    if (h != 0.0 && h != 1.0 && h != -1.0) return false;
  }
  for (const auto& [edge, value] : couplings_) {
    if (value != 1.0 && value != -1.0) return false;
  }
  return true;
}

bool IsingInstance::has_integral_values() const {
  // 2^50 keeps every partial sum exactly representable for any realistic n.
  constexpr double kLimit = 0x1.0p50;
  auto integral = [](double v) {
    return std::isfinite(v) && std::trunc(v) == v && std::abs(v) < kLimit;
  };
  for (double h : fields_) {
    if (!integral(h)) return false;
  }
  for (const auto& [edge, value] : couplings_) {
    if (!integral(value)) return false;
  }
  return true;
}

NeighborTable::NeighborTable(const IsingInstance& instance) {
  const std::size_t n = instance.size();
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [edge, value] : instance.couplings()) {
    ++deg[edge.first];
    ++deg[edge.second];
  }
  offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + deg[i];
  index.resize(offsets[n]);
  weight.resize(offsets[n]);
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [edge, value] : instance.couplings()) {
    const auto [i, j] = edge;
    index[fill[i]] = j;
    weight[fill[i]++] = value;
    index[fill[j]] = i;
    weight[fill[j]++] = value;
  }
}

IsingInstance build_eight_spin_gadget() {
  IsingInstance gadget(8, "gadget8");
  for (std::size_t core = 0; core < 4; ++core) {
    gadget.set_field(core, +1.0);
    gadget.set_field(core + 4, -1.0);
  }
  for (std::size_t core = 0; core < 4; ++core) {
    gadget.add_coupling(core, (core + 1) % 4, +1.0);
    gadget.add_coupling(core, core + 4, +1.0);
  }
  return gadget;
}

IsingInstance random_pm1_instance(const Graph& graph, std::uint64_t seed,
                                  std::string label) {
  IsingInstance instance(graph.num_nodes, std::move(label));
  Rng rng(seed);
  for (const auto& [u, v] : graph.edges) {
    instance.add_coupling(u, v, coin(rng) ? +1.0 : -1.0);
  }
  return instance;
}

double ising_energy(const IsingInstance& instance, std::span<const Spin> spins) {
  if (spins.size() != instance.size()) {
    throw std::invalid_argument("assignment has length " + std::to_string(spins.size()) +
                                ", instance has n=" + std::to_string(instance.size()));
  }
  double energy = 0.0;
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw std::invalid_argument("spin " + std::to_string(i) + " is not +-1");
    }
    energy -= instance.field(i) * spins[i];
  }
  for (const auto& [edge, value] : instance.couplings()) {
    energy -= value * spins[edge.first] * spins[edge.second];
  }
  return energy;
}

// ---------------------------------------------------------------------------
// Text format

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line),
      detail_(what) {}

namespace {

constexpr std::string_view kLabelPrefix = "# label:";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = s.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = s.size();
    out.push_back(s.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_real(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
    throw ParseError(line, "expected a finite real, got '" + std::string(tok) + "'");
  }
  return value;
}

void append_real(std::string& out, double value) { out += format_real(value); }

}  // namespace

IsingInstance parse_instance(std::string_view text) {
  std::optional<IsingInstance> instance;
  std::string label;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto stop = text.find('\n', pos);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view raw = text.substr(pos, stop - pos);
    pos = stop + 1;
    ++line_no;

    std::string_view line = trim(raw);
    if (line.starts_with(kLabelPrefix)) {
      label = std::string(trim(line.substr(kLabelPrefix.size())));
      if (instance) instance->set_label(label);
      continue;
    }
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;

    const auto tok = split_ws(line);
    if (tok[0] == "n") {
      if (tok.size() != 2) throw ParseError(line_no, "expected 'n <spin-count>'");
      if (instance) throw ParseError(line_no, "spin count given twice");
      instance.emplace(parse_index(tok[1], line_no), label);
    } else if (tok[0] == "h") {
      if (tok.size() != 3) throw ParseError(line_no, "expected 'h <i> <value>'");
      if (!instance) throw ParseError(line_no, "'h' before 'n'");
      const auto i = parse_index(tok[1], line_no);
      if (i >= instance->size()) {
        throw ParseError(line_no, "index " + std::to_string(i) + " >= n");
      }
      instance->set_field(i, parse_real(tok[2], line_no));
    } else if (tok[0] == "J") {
      if (tok.size() != 4) throw ParseError(line_no, "expected 'J <i> <j> <value>'");
      if (!instance) throw ParseError(line_no, "'J' before 'n'");
      const auto i = parse_index(tok[1], line_no);
      const auto j = parse_index(tok[2], line_no);
      const double value = parse_real(tok[3], line_no);
      if (i >= instance->size() || j >= instance->size()) {
        throw ParseError(line_no, "index " + std::to_string(std::max(i, j)) + " >= n");
      }
      if (i == j) throw ParseError(line_no, "self-loop on spin " + std::to_string(i));
      if (instance->couplings().contains(std::minmax(i, j))) {
        throw ParseError(line_no, "duplicate edge (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
      }
      instance->add_coupling(i, j, value);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!instance) throw ParseError(line_no, "missing 'n' record");
  return std::move(*instance);
}

std::string serialize_instance(const IsingInstance& instance) {
  std::string out;
  if (!instance.label().empty()) {
    out += kLabelPrefix;
    out += ' ';
    out += instance.label();
    out += '\n';
  }
  out += "n " + std::to_string(instance.size()) + '\n';
  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.field(i) == 0.0) continue;
    out += "h " + std::to_string(i) + ' ';
    append_real(out, instance.field(i));
    out += '\n';
  }
  for (const auto& [edge, value] : instance.couplings()) {
    out += "J " + std::to_string(edge.first) + ' ' + std::to_string(edge.second) + ' ';
    append_real(out, value);
    out += '\n';
  }
  return out;
}

IsingInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.detail());
  }
}

void save_instance(const IsingInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  out << serialize_instance(instance);
}

}  // namespace compass
