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

#include "compass/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "compass/format.hpp"

namespace compass {

ScheduleValue schedule(double t, double duration, ScheduleKind kind) {
  if (kind == ScheduleKind::kTransverseOnly) {
    return t <= duration ? ScheduleValue{1.0, 0.0} : ScheduleValue{0.0, 1.0};
  }
  if (t >= duration) return {0.0, 1.0};
  if (t <= 0.0) return {1.0, 0.0};
  const double s = t / duration;
  return {1.0 - s, s};
}

DragConfig DragConfig::with_duration(double duration) {
  DragConfig config;
  config.duration = duration;
  config.hold = 0.2 * duration;
  return config;
}

void DragConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("drag duration T must be > 0");
  }
  if (!(dt > 0.0) || dt > duration) {
    throw std::invalid_argument("timestep must satisfy 0 < dt <= T");
  }
  if (!(hold >= 0.0) || !std::isfinite(hold)) {
    throw std::invalid_argument("hold must be >= 0");
  }
  if (!std::isfinite(bx)) throw std::invalid_argument("Bx must be finite");
}

void NoiseSpec::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("kick amplitude must be >= 0");
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("kick period must be > 0");
  }
}

CompassState transverse_ground_state(std::size_t n) {
  return CompassState{std::vector<double>(n, std::numbers::pi / 2),
                      std::vector<double>(n, 0.0), 0.0};
}

DivergenceError::DivergenceError(double t, const std::string& what)
    : std::runtime_error("simulation diverged at t=" + std::to_string(t) + ": " + what),
      t_(t) {}

// ---------------------------------------------------------------------------

CompassModel::CompassModel(const IsingInstance& instance)
    : fields_(instance.fields().begin(), instance.fields().end()), neighbors_(instance) {}

double CompassModel::potential(std::span<const double> theta, ScheduleValue ab,
                               double bx) const {
  if (theta.size() != size()) {
    throw std::invalid_argument("theta has length " + std::to_string(theta.size()) +
                                ", model has n=" + std::to_string(size()));
  }
  double transverse = 0.0;
  double ising = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double ci = std::cos(theta[i]);
    transverse -= std::sin(theta[i]) * bx;
    ising -= fields_[i] * ci;
    double pair = 0.0;
    for (std::size_t k = neighbors_.begin(i); k < neighbors_.end(i); ++k) {
      pair += neighbors_.weight[k] * std::cos(theta[neighbors_.index[k]]);
    }
    // Each pair is visited from both ends.
    ising -= 0.5 * ci * pair;
  }
  return ab.a * transverse + ab.b * ising;
}

void CompassModel::gradient_from_trig(std::span<const double> cos_theta,
                                      std::span<const double> sin_theta,
                                      ScheduleValue ab, double bx,
                                      std::span<double> out) const {
  const double transverse = ab.a * bx;
  for (std::size_t i = 0; i < size(); ++i) {
    double local = fields_[i];
    for (std::size_t k = neighbors_.begin(i); k < neighbors_.end(i); ++k) {
      local += neighbors_.weight[k] * cos_theta[neighbors_.index[k]];
    }
    out[i] = -transverse * cos_theta[i] + ab.b * sin_theta[i] * local;
  }
}

void CompassModel::gradient(std::span<const double> theta, ScheduleValue ab, double bx,
                            std::span<double> out) const {
  if (theta.size() != size() || out.size() != size()) {
    throw std::invalid_argument("gradient: length mismatch with model n=" +
                                std::to_string(size()));
  }
  std::vector<double> c(size());
  std::vector<double> s(size());
  for (std::size_t i = 0; i < size(); ++i) {
    c[i] = std::cos(theta[i]);
    s[i] = std::sin(theta[i]);
  }
  gradient_from_trig(c, s, ab, bx, out);
}

double potential(const IsingInstance& instance, std::span<const double> theta,
                 ScheduleValue ab, double bx) {
  return CompassModel(instance).potential(theta, ab, bx);
}

std::vector<double> gradient(const IsingInstance& instance, std::span<const double> theta,
                             ScheduleValue ab, double bx) {
  std::vector<double> out(instance.size());
  CompassModel(instance).gradient(theta, ab, bx, out);
  return out;
}

double residual_kinetic_energy(const CompassState& state) {
  double ke = 0.0;
  for (double w : state.omega) ke += 0.5 * w * w;
  return ke;
}

double total_energy(const CompassModel& model, const CompassState& state,
                    const DragConfig& config) {
  const auto ab = schedule(state.t, config.duration, config.schedule);
  return residual_kinetic_energy(state) + model.potential(state.theta, ab, config.bx);
}

// ---------------------------------------------------------------------------

VerletIntegrator::VerletIntegrator(const CompassModel& model, const DragConfig& config)
    : model_(model),
      config_(config),
      force_(model.size()),
      cos_(model.size()),
      sin_(model.size()) {}

void VerletIntegrator::compute_force(std::span<const double> theta, double t) {
  for (std::size_t i = 0; i < theta.size(); ++i) {
    cos_[i] = std::cos(theta[i]);
    sin_[i] = std::sin(theta[i]);
  }
  model_.gradient_from_trig(cos_, sin_, schedule(t, config_.duration, config_.schedule),
                            config_.bx, force_);
  for (double& f : force_) f = -f;
}

void VerletIntegrator::prime(const CompassState& state) {
  if (state.theta.size() != model_.size() || state.omega.size() != model_.size()) {
    throw std::invalid_argument("state length does not match model n=" +
                                std::to_string(model_.size()));
  }
  compute_force(state.theta, state.t);
}

void VerletIntegrator::advance(CompassState& state, double t_next) {
  const double dt = t_next - state.t;
  const double half = 0.5 * dt;
  const std::size_t n = state.theta.size();
  for (std::size_t i = 0; i < n; ++i) {
    state.omega[i] += half * force_[i];
    state.theta[i] += dt * state.omega[i];
  }
  compute_force(state.theta, t_next);
  bool diverged = false;
  for (std::size_t i = 0; i < n; ++i) {
    state.omega[i] += half * force_[i];
    if (!(std::abs(state.omega[i]) <= kOmegaGuard) || !std::isfinite(state.theta[i])) {
      diverged = true;
    }
  }
  state.t = t_next;
  if (diverged) {
    throw DivergenceError(t_next, "angular velocity left the finite range (|omega| > " +
                                      std::to_string(kOmegaGuard) +
                                      " or non-finite); reduce dt");
  }
}

CompassState step(const CompassState& state, const CompassModel& model,
                  const DragConfig& config) {
  VerletIntegrator integrator(model, config);
  integrator.prime(state);
  CompassState next = state;
  integrator.advance(next, state.t + config.dt);
  return next;
}

void apply_kick(CompassState& state, const NoiseSpec& noise, Rng& rng) {
  for (double& w : state.omega) w += uniform(rng, -noise.amplitude, noise.amplitude);
}

// ---------------------------------------------------------------------------

DragResult run_drag(const CompassModel& model, const DragConfig& config,
                    const NoiseSpec& noise, Rng& rng, const RunOptions& options) {
  config.validate();
  if (noise.enabled) noise.validate();

  const auto drag_steps = static_cast<std::size_t>(std::llround(config.duration / config.dt));
  const auto hold_steps = static_cast<std::size_t>(std::llround(config.hold / config.dt));

  // Kick m lands after the step that reaches m * period, for m * period <= T.
  std::vector<std::size_t> kick_steps;
  if (noise.enabled) {
    const double slack = 1e-9 * config.duration;
    for (std::size_t m = 1;; ++m) {
      const double when = static_cast<double>(m) * noise.period;
      if (when > config.duration + slack) break;
      kick_steps.push_back(
          std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(when / config.dt))));
    }
  }

  DragResult result;
  CompassState state = transverse_ground_state(model.size());
  VerletIntegrator integrator(model, config);
  integrator.prime(state);

  auto record = [&](std::size_t k) {
    if (options.trajectory_stride != 0 && k % options.trajectory_stride == 0) {
      result.trajectory.push_back(state);
    }
  };
  record(0);

  std::size_t next_kick = 0;
  double hold_ke_sum = 0.0;
  const std::size_t total_steps = drag_steps + hold_steps;
  for (std::size_t k = 1; k <= total_steps; ++k) {
    integrator.advance(state, static_cast<double>(k) * config.dt);
    while (next_kick < kick_steps.size() && kick_steps[next_kick] == k) {
      apply_kick(state, noise, rng);
      ++next_kick;
      ++result.diagnostics.kicks;
    }
    if (k == drag_steps) {
      result.drag_end_state = state;
      result.diagnostics.drag_end_ke = residual_kinetic_energy(state);
    } else if (k > drag_steps) {
      hold_ke_sum += residual_kinetic_energy(state);
    }
    record(k);
  }
  if (drag_steps == 0) result.drag_end_state = transverse_ground_state(model.size());
  if (options.trajectory_stride != 0 && total_steps % options.trajectory_stride != 0) {
    result.trajectory.push_back(state);
  }

  result.diagnostics.steps = total_steps;
  result.diagnostics.residual_ke = residual_kinetic_energy(state);
  result.diagnostics.mean_hold_ke =
      hold_steps == 0 ? 0.0 : hold_ke_sum / static_cast<double>(hold_steps);
  result.diagnostics.final_potential = model.potential(
      state.theta, schedule(state.t, config.duration, config.schedule), config.bx);
  result.final_state = std::move(state);
  return result;
}

DragResult run_drag(const IsingInstance& instance, const DragConfig& config,
                    const NoiseSpec& noise, std::uint64_t seed, const RunOptions& options) {
  const CompassModel model(instance);
  Rng rng(seed);
  return run_drag(model, config, noise, rng, options);
}

void write_trajectory_csv(std::ostream& out, std::span<const CompassState> samples) {
  const std::size_t n = samples.empty() ? 0 : samples.front().size();
  out << 't';
  for (std::size_t i = 0; i < n; ++i) out << ",theta_" << i;
  for (std::size_t i = 0; i < n; ++i) out << ",omega_" << i;
  out << '\n';
  for (const auto& s : samples) {
    out << format_real(s.t);
    for (double v : s.theta) out << ',' << format_real(v);
    for (double v : s.omega) out << ',' << format_real(v);
    out << '\n';
  }
}

}  // namespace compass
