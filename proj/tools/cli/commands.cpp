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

#include "cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "compass/experiment.hpp"
#include "compass/format.hpp"

namespace compass::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InstanceSet {
  std::vector<IsingInstance> instances;
  std::optional<std::vector<std::size_t>> chimera_order;
  std::string source;
};

InstanceSet resolve_instances(const ExperimentConfig& config) {
  InstanceSet set;
  std::vector<std::string> files = config.instance_files;
  if (!config.instance_dir.empty()) {
    if (!fs::is_directory(config.instance_dir)) {
      throw UsageError("instance directory not found: " + config.instance_dir);
    }
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(config.instance_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        found.push_back(entry.path().string());
      }
    }
    if (found.empty()) throw UsageError("no *.txt instances in " + config.instance_dir);
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }

  if (!files.empty()) {
    for (const auto& path : files) {
      if (!fs::exists(path)) throw UsageError("instance file not found: " + path);
      set.instances.push_back(load_instance(path));
    }
    set.source = "files";
  } else if (config.gadget) {
    set.instances.push_back(build_eight_spin_gadget());
    set.source = "gadget8";
  } else {
    const auto chimera = generate_chimera(config.chimera);
    for (std::size_t i = 0; i < config.instances; ++i) {
      const std::string label =
          "chimera-" + std::to_string(config.chimera.rows) + "x" +
          std::to_string(config.chimera.cols) + "x" + std::to_string(config.chimera.shore) +
          "-" + std::to_string(i);
      set.instances.push_back(
          random_pm1_instance(chimera.graph, derive_seed(config.instance_seed, i, 0), label));
    }
    set.chimera_order = default_chimera_order(config.chimera);
    set.source = "chimera";
  }
  if (set.instances.empty()) throw UsageError("instance set is empty");
  return set;
}

std::vector<OracleResult> solve_all(const InstanceSet& set, const ExperimentConfig& config) {
  std::vector<OracleResult> results(set.instances.size());
  parallel_for(set.instances.size(), config.workers, [&](std::size_t i) {
    if (set.chimera_order) {
      results[i] = exact_ground_dp(set.instances[i], *set.chimera_order, config.width_cap);
    } else {
      results[i] = solve_ground(set.instances[i], std::nullopt, config.width_cap);
    }
  });
  return results;
}

void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw UsageError("cannot create output directory " + dir);
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string records_text(const ExperimentConfig& config, std::span<const RunRecord> records) {
  if (config.format == "json") return records_to_json(records);
  std::ostringstream csv;
  write_records_csv(csv, records);
  return csv.str();
}

std::string records_file(const ExperimentConfig& config) {
  return config.format == "json" ? "records.json" : "records.csv";
}

json drag_json(const ExperimentConfig& config) {
  return {{"T", config.drag.duration},
          {"dt", config.drag.dt},
          {"bx", config.drag.bx},
          {"hold", config.drag.hold},
          {"noise_amplitude", config.noise.enabled ? config.noise.amplitude : 0.0},
          {"noise_period", config.noise.period}};
}

void write_oracle_csv(const fs::path& path, const std::vector<OracleResult>& oracle) {
  std::ostringstream csv;
  csv << "instance_id,ground_energy,degeneracy\n";
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    csv << i << ',' << format_real(oracle[i].ground_energy) << ',' << oracle[i].degeneracy
        << '\n';
  }
  write_text(path, csv.str());
}

int run_batch_command(const ExperimentConfig& config, std::ostream& log, bool annealing) {
  if (config.runs < 1) throw UsageError("--runs must be >= 1");
  const auto set = resolve_instances(config);
  if (annealing) {
    config.sa.validate();
  } else {
    config.drag.validate();
    if (config.noise.enabled) config.noise.validate();
  }
  const auto oracle = solve_all(set, config);

  std::vector<BatchInstance> batch;
  batch.reserve(set.instances.size());
  for (std::size_t i = 0; i < set.instances.size(); ++i) {
    batch.push_back(BatchInstance{i, set.instances[i], oracle[i].ground_energy});
  }

  std::vector<RunRecord> records;
  if (annealing) {
    records = sa_batch(batch, config.sa, config.runs, config.master_seed, config.workers);
  } else {
    CompassRunConfig run_config{config.drag, config.noise, config.tie_epsilon};
    records = compass_batch(batch, run_config, config.runs, config.master_seed, config.workers);
  }
  const auto summary = summarize(records, config.bins);

  prepare_out_dir(config.out_dir);
  const fs::path dir(config.out_dir);
  write_oracle_csv(dir / "oracle.csv", oracle);
  write_text(dir / records_file(config), records_text(config, records));
  {
    std::ostringstream csv;
    csv << "instance_id,success_probability\n";
    for (std::size_t i = 0; i < summary.success_probabilities.size(); ++i) {
      csv << i << ',' << format_real(summary.success_probabilities[i]) << '\n';
    }
    write_text(dir / "success.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_histogram_csv(csv, summary.histogram);
    write_text(dir / "histogram.csv", csv.str());
  }
  const std::string method = annealing ? "simulated annealing" : "compass drag";
  write_text(dir / "histogram.gp",
             histogram_plot_script("histogram.csv", method + " success probabilities"));

  const double extremes = fraction_outside(summary.success_probabilities, 0.1, 0.9);
  json out = {{"mode", annealing ? "sa" : "bench"},
              {"source", set.source},
              {"instances", set.instances.size()},
              {"runs_per_instance", config.runs},
              {"master_seed", config.master_seed},
              {"instances_with_success", summary.instances_with_success},
              {"extreme_fraction", extremes},
              {"histogram_counts", summary.histogram.counts}};
  if (annealing) {
    out["sa"] = {{"beta_start", config.sa.beta_start},
                 {"beta_end", config.sa.beta_end},
                 {"sweeps", config.sa.sweeps},
                 {"order", config.sa.order == ProposalOrder::kRandomSite ? "random" : "sequential"}};
  } else {
    out["drag"] = drag_json(config);
  }
  write_text(dir / "summary.json", out.dump(2) + '\n');

  log << method << ": " << set.instances.size() << " instances x " << config.runs
      << " runs; instances with >=1 success: " << summary.instances_with_success
      << "; fraction in [0,0.1]u[0.9,1]: " << format_real(extremes) << '\n';
  return kExitOk;
}

}  // namespace

int cmd_gadget8(const ExperimentConfig& config, std::ostream& log) {
  if (config.runs < 1) throw UsageError("--runs must be >= 1");
  config.drag.validate();
  if (config.noise.enabled) config.noise.validate();
  prepare_out_dir(config.out_dir);
  const fs::path dir(config.out_dir);

  const IsingInstance gadget = build_eight_spin_gadget();
  const CompassModel model(gadget);

  struct Scenario {
    std::string name;
    double duration;
    double hold;
    NoiseSpec noise;
  };
  // All three end at t = 1200 so they share a time axis.
  const std::vector<Scenario> scenarios = {
      {"T1000_clean", 1000.0, 200.0, NoiseSpec{}},
      {"T1000_noisy", 1000.0, 200.0, NoiseSpec::kicks(0.02, 10.0)},
      {"T200_clean", 200.0, 1000.0, NoiseSpec{}},
  };

  json scenario_json = json::array();
  std::vector<std::string> csv_names;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    const auto& sc = scenarios[k];
    DragConfig drag = config.drag;
    drag.duration = sc.duration;
    drag.hold = sc.hold;
    Rng rng(derive_seed(config.master_seed, 1'000'000 + k, 0));
    const auto result = run_drag(model, drag, sc.noise, rng,
                                 RunOptions{std::max<std::size_t>(1, config.trajectory_stride)});
    const std::string csv_name = "traj_" + sc.name + ".csv";
    {
      std::ostringstream csv;
      write_trajectory_csv(csv, result.trajectory);
      write_text(dir / csv_name, csv.str());
    }
    csv_names.push_back(csv_name);
    scenario_json.push_back({{"name", sc.name},
                             {"T", sc.duration},
                             {"hold", sc.hold},
                             {"noise_amplitude", sc.noise.enabled ? sc.noise.amplitude : 0.0},
                             {"drag_end_theta", result.drag_end_state.theta},
                             {"final_theta", result.final_state.theta},
                             {"drag_end_ke", result.diagnostics.drag_end_ke},
                             {"residual_ke", result.diagnostics.residual_ke},
                             {"mean_hold_ke", result.diagnostics.mean_hold_ke},
                             {"trajectory", csv_name}});
    log << sc.name << ": residual KE " << format_real(result.diagnostics.residual_ke)
        << ", core theta " << format_real(result.drag_end_state.theta[0])
        << ", ancilla theta " << format_real(result.drag_end_state.theta[4]) << " at t=T\n";
  }
  write_text(dir / "trajectories.gp",
             trajectory_plot_script(csv_names, {0, 4}, "eight-spin gadget: core 0 and ancilla 4"));

  const auto ground = brute_force_ground(gadget);
  const std::vector<BatchInstance> batch{{0, gadget, ground.ground_energy}};
  const CompassRunConfig run_config{config.drag, config.noise, config.tie_epsilon};
  const auto records =
      compass_batch(batch, run_config, config.runs, config.master_seed, config.workers);
  const auto stats = isolated_cluster_stats(records);
  write_text(dir / records_file(config), records_text(config, records));

  const json summary = {{"mode", "gadget8"},
                        {"ground_energy", ground.ground_energy},
                        {"degeneracy", ground.degeneracy},
                        {"scenarios", scenario_json},
                        {"batch",
                         {{"runs", config.runs},
                          {"master_seed", config.master_seed},
                          {"drag", drag_json(config)},
                          {"p_s", stats.p_isolated},
                          {"p_C", stats.p_cluster},
                          {"success_probability", success_probability(records)}}}};
  write_text(dir / "summary.json", summary.dump(2) + '\n');
  log << "batch of " << config.runs << ": p_s " << format_real(stats.p_isolated) << ", p_C "
      << format_real(stats.p_cluster) << '\n';
  return kExitOk;
}

int cmd_bench(const ExperimentConfig& config, std::ostream& log) {
  return run_batch_command(config, log, false);
}

int cmd_sa(const ExperimentConfig& config, std::ostream& log) {
  return run_batch_command(config, log, true);
}

int cmd_exact(const ExperimentConfig& config, std::ostream& log) {
  const auto set = resolve_instances(config);
  const auto oracle = solve_all(set, config);
  prepare_out_dir(config.out_dir);
  const fs::path dir(config.out_dir);
  write_oracle_csv(dir / "oracle.csv", oracle);
  if (config.format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      arr.push_back({{"instance_id", i},
                     {"label", set.instances[i].label()},
                     {"ground_energy", oracle[i].ground_energy},
                     {"degeneracy", oracle[i].degeneracy}});
    }
    write_text(dir / "oracle.json", arr.dump(2) + '\n');
  }
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    log << "instance " << i << " (" << set.instances[i].label()
        << "): ground_energy " << format_real(oracle[i].ground_energy) << ", degeneracy "
        << oracle[i].degeneracy << '\n';
  }
  return kExitOk;
}

int cmd_gen(const ExperimentConfig& config, std::ostream& log) {
  const auto set = resolve_instances(config);
  const fs::path dir = fs::path(config.out_dir) / "instances";
  prepare_out_dir(dir.string());
  for (std::size_t i = 0; i < set.instances.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "instance_%04zu.txt", i);
    save_instance(set.instances[i], (dir / name).string());
  }
  log << "wrote " << set.instances.size() << " instances to " << dir.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

namespace {

struct RawFlags {
  std::optional<double> hold;
  double noise_amp = 0.0;
  bool no_noise = false;
  std::string sa_order = "random";
  std::string beta_shape = "linear";
  std::vector<std::size_t> mask;
};

void add_common_options(CLI::App* sub, ExperimentConfig& c, RawFlags& raw) {
  sub->add_option("--T", c.drag.duration, "drag duration T")->capture_default_str();
  sub->add_option("--dt", c.drag.dt, "integration timestep")->capture_default_str();
  sub->add_option("--bx", c.drag.bx, "transverse field strength")->capture_default_str();
  sub->add_option("--hold", raw.hold, "post-drag hold time (default 0.2 T)");
  sub->add_option("--noise-amp,--noise", raw.noise_amp, "velocity kick half-width (0 = off)")
      ->capture_default_str();
  sub->add_option("--noise-period", c.noise.period, "time between kicks")->capture_default_str();
  sub->add_flag("--no-noise", raw.no_noise, "disable kicks");
  sub->add_option("--runs", c.runs, "runs per instance")->capture_default_str();
  sub->add_option("--instances", c.instances, "number of generated instances")
      ->capture_default_str();
  sub->add_option("--seed", c.master_seed, "master seed")->capture_default_str();
  sub->add_option("--instance-seed", c.instance_seed, "seed for generated instances")
      ->capture_default_str();
  sub->add_option("--bins", c.bins, "histogram bins")->capture_default_str();
  sub->add_option("--workers", c.workers, "worker threads")->capture_default_str();
  sub->add_option("--out", c.out_dir, "output directory")->capture_default_str();
  sub->add_option("--format", c.format, "records format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--instance", c.instance_files, "instance file (repeatable)");
  sub->add_option("--instance-dir", c.instance_dir, "directory of *.txt instance files");
  sub->add_flag("--gadget", c.gadget, "use the eight-spin gadget");
  sub->add_option("--rows", c.chimera.rows, "Chimera rows")->capture_default_str();
  sub->add_option("--cols", c.chimera.cols, "Chimera columns")->capture_default_str();
  sub->add_option("--shore", c.chimera.shore, "Chimera shore size")->capture_default_str();
  sub->add_option("--mask", raw.mask, "disabled physical qubit indices");
  sub->add_option("--width-cap", c.width_cap, "exact solver elimination width cap")
      ->capture_default_str();
  sub->add_option("--stride", c.trajectory_stride, "trajectory sampling stride (steps)")
      ->capture_default_str();
  sub->add_option("--tie-eps", c.tie_epsilon, "readout tie threshold on |cos theta|")
      ->capture_default_str();
  sub->add_option("--beta-start", c.sa.beta_start, "SA initial inverse temperature")
      ->capture_default_str();
  sub->add_option("--beta-end", c.sa.beta_end, "SA final inverse temperature")
      ->capture_default_str();
  sub->add_option("--sweeps", c.sa.sweeps, "SA sweeps")->capture_default_str();
  sub->add_option("--sa-order", raw.sa_order, "SA proposal order")
      ->check(CLI::IsMember({"random", "sequential"}))
      ->capture_default_str();
  sub->add_option("--beta-shape", raw.beta_shape, "SA beta ramp")
      ->check(CLI::IsMember({"linear", "geometric"}))
      ->capture_default_str();
}

void finalize(ExperimentConfig& c, const RawFlags& raw) {
  c.drag.hold = raw.hold.value_or(0.2 * c.drag.duration);
  c.noise.amplitude = raw.noise_amp;
  c.noise.enabled = raw.noise_amp > 0.0 && !raw.no_noise;
  c.sa.order = raw.sa_order == "sequential" ? ProposalOrder::kSequential
                                            : ProposalOrder::kRandomSite;
  c.sa.shape = raw.beta_shape == "geometric" ? BetaShape::kGeometric : BetaShape::kLinear;
  c.chimera.mask = std::set<std::size_t>(raw.mask.begin(), raw.mask.end());
  if (c.workers == 0) c.workers = 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical compass-model adiabatic dragging experiments"};
  app.require_subcommand(1);
  ExperimentConfig config;
  RawFlags raw;

  const std::vector<std::pair<std::string, std::string>> modes = {
      {"gadget8", "eight-spin gadget trajectories and p_s / p_C batch"},
      {"bench", "compass-model batch on an instance set"},
      {"sa", "simulated-annealing batch on an instance set"},
      {"exact", "exact ground energies and degeneracies"},
      {"gen", "write instance files"},
  };
  for (const auto& [name, help] : modes) {
    add_common_options(app.add_subcommand(name, help), config, raw);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  config.mode = app.get_subcommands().front()->get_name();
  finalize(config, raw);

  try {
    if (config.mode == "gadget8") return cmd_gadget8(config, out);
    if (config.mode == "bench") return cmd_bench(config, out);
    if (config.mode == "sa") return cmd_sa(config, out);
    if (config.mode == "exact") return cmd_exact(config, out);
    return cmd_gen(config, out);
  } catch (const DivergenceError& e) {
    err << "numeric divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const OracleCapError& e) {
    err << "oracle cap exceeded: " << e.what() << '\n';
    return kExitOracleCap;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace compass::cli
