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

#include "compass/readout.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "compass/format.hpp"

namespace compass {

SpinConfig project_spins(std::span<const double> theta, double epsilon, Rng& rng) {
  SpinConfig spins(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double z = std::cos(theta[i]);
    if (z > epsilon) {
      spins[i] = 1;
    } else if (z < -epsilon) {
      spins[i] = -1;
    } else {
      spins[i] = coin(rng) ? 1 : -1;
    }
  }
  return spins;
}

bool energy_matches(double energy, double ground_energy, bool integral) {
  if (integral) return energy == ground_energy;
  return std::abs(energy - ground_energy) <= 1e-9 * std::max(1.0, std::abs(ground_energy));
}

double success_probability(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("success_probability: no records");
  std::size_t hits = 0;
  for (const auto& r : records) {
    if (r.instance_id != records.front().instance_id) {
      throw std::invalid_argument("success_probability: records span several instances");
    }
    hits += r.success ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

std::vector<double> success_probabilities(std::span<const RunRecord> records) {
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> tally;
  for (const auto& r : records) {
    auto& [hits, total] = tally[r.instance_id];
    hits += r.success ? 1 : 0;
    ++total;
  }
  std::vector<double> out;
  out.reserve(tally.size());
  for (const auto& [id, ht] : tally) {
    out.push_back(static_cast<double>(ht.first) / static_cast<double>(ht.second));
  }
  return out;
}

IsolatedClusterStats isolated_cluster_stats(std::span<const RunRecord> records) {
  std::size_t isolated = 0;
  std::size_t cluster = 0;
  for (const auto& r : records) {
    if (r.projected.size() != 8) {
      throw std::invalid_argument("isolated_cluster_stats: record has " +
                                  std::to_string(r.projected.size()) + " spins, need 8");
    }
    const auto& s = r.projected;
    if (std::all_of(s.begin(), s.end(), [](Spin x) { return x == -1; })) {
      ++isolated;
    } else if (std::all_of(s.begin(), s.begin() + 4, [](Spin x) { return x == 1; })) {
      ++cluster;
    }
  }
  IsolatedClusterStats stats;
  stats.runs = records.size();
  if (stats.runs == 0) return stats;
  const auto runs = static_cast<double>(stats.runs);
  stats.p_isolated = static_cast<double>(isolated) / runs;
  stats.p_cluster = static_cast<double>(cluster) / runs / 16.0;
  return stats;
}

double HistogramSummary::extreme_fraction(double lo_edge, double hi_edge) const {
  if (n_instances == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    if (bin_edges[b + 1] <= lo_edge || bin_edges[b] >= hi_edge) hits += counts[b];
  }
  return static_cast<double>(hits) / static_cast<double>(n_instances);
}

HistogramSummary histogram(std::span<const double> values, std::size_t n_bins) {
  if (n_bins < 2) throw std::invalid_argument("histogram needs at least 2 bins");
  HistogramSummary out;
  out.bin_edges.resize(n_bins + 1);
  for (std::size_t b = 0; b <= n_bins; ++b) {
    out.bin_edges[b] = static_cast<double>(b) / static_cast<double>(n_bins);
  }
  out.counts.assign(n_bins, 0);
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("histogram value outside [0,1]: " + format_real(v));
    }
    const auto b = std::min(n_bins - 1, static_cast<std::size_t>(v * static_cast<double>(n_bins)));
    ++out.counts[b];
  }
  out.n_instances = values.size();
  return out;
}

double fraction_outside(std::span<const double> values, double lo, double hi) {
  if (values.empty()) return 0.0;
  const auto hits = std::count_if(values.begin(), values.end(),
                                  [&](double v) { return v <= lo || v >= hi; });
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

void write_records_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << "instance_id,run_id,seed,final_energy,ground_energy,success,residual_ke\n";
  for (const auto& r : records) {
    out << r.instance_id << ',' << r.run_id << ',' << r.seed << ','
        << format_real(r.final_energy) << ',' << format_real(r.ground_energy) << ','
        << (r.success ? 1 : 0) << ',' << format_real(r.residual_ke) << '\n';
  }
}

std::string records_to_json(std::span<const RunRecord> records) {
  auto arr = nlohmann::json::array();
  for (const auto& r : records) {
    std::string spins;
    spins.reserve(r.projected.size());
    for (Spin s : r.projected) spins += s > 0 ? '+' : '-';
    arr.push_back({{"instance_id", r.instance_id},
                   {"run_id", r.run_id},
                   {"seed", r.seed},
                   {"final_energy", r.final_energy},
                   {"ground_energy", r.ground_energy},
                   {"success", r.success},
                   {"residual_ke", r.residual_ke},
                   {"projected", spins}});
  }
  return arr.dump(2) + '\n';
}

void write_histogram_csv(std::ostream& out, const HistogramSummary& summary) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < summary.counts.size(); ++b) {
    out << format_real(summary.bin_edges[b]) << ',' << format_real(summary.bin_edges[b + 1])
        << ',' << summary.counts[b] << '\n';
  }
}

std::string histogram_plot_script(const std::string& csv_path, const std::string& title) {
  std::ostringstream g;
  g << "# gnuplot -p <this file>\n"
    << "set datafile separator ','\n"
    << "set title '" << title << "'\n"
    << "set xlabel 'success probability'\n"
    << "set ylabel 'instances'\n"
    << "set xrange [0:1]\n"
    << "set style fill solid 0.6 border -1\n"
    << "set boxwidth 0.9 relative\n"
    << "plot '" << csv_path << "' every ::1 using (($1+$2)/2):3:($2-$1) with boxes notitle\n";
  return g.str();
}

std::string trajectory_plot_script(const std::vector<std::string>& csv_paths,
                                   const std::vector<std::size_t>& spins,
                                   const std::string& title) {
  std::ostringstream g;
  g << "# gnuplot -p <this file>\n"
    << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set title '" << title << "'\n"
    << "set xlabel 't'\n"
    << "set ylabel 'theta'\n"
    << "plot ";
  bool first = true;
  for (const auto& path : csv_paths) {
    for (std::size_t spin : spins) {
      if (!first) g << ", \\\n     ";
      first = false;
      // Column 1 is t; theta_i is column i + 2.
      g << "'" << path << "' using 1:" << spin + 2 << " with lines title '" << path
        << " theta_" << spin << "'";
    }
  }
  g << '\n';
  return g.str();
}

}  // namespace compass
