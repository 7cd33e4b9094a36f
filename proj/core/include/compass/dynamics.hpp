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
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "compass/instance.hpp"
#include "compass/rng.hpp"

namespace compass {

// Classical compass-needle model. Each spin is a planar rotor with angle
// theta_i (unit moment of inertia) coupled through cos(theta_i):
//
//   V_ising = -sum_i h_i cos(theta_i) - sum_{i<j} J_ij cos(theta_i) cos(theta_j)
//   V_trans = -Bx sum_i sin(theta_i)
//   V(t)    = A(t) V_trans + B(t) V_ising
//
// and theta_i'' = -dV/dtheta_i. Angles are never wrapped.

enum class ScheduleKind {
  kLinear,         ///< A = 1 - t/T, B = t/T
  kTransverseOnly, ///< A = 1, B = 0 while t <= T; diagnostic only
};

struct ScheduleValue {
  double a = 1.0;  ///< weight of the transverse potential
  double b = 0.0;  ///< weight of the Ising potential
};

/// Interpolation weights at time t. For t > T the schedule is frozen at the
/// final potential (A, B) = (0, 1).
ScheduleValue schedule(double t, double duration, ScheduleKind kind = ScheduleKind::kLinear);

struct DragConfig {
  double duration = 1000.0;  ///< T
  double dt = 0.01;
  double bx = 1.0;
  double hold = 200.0;  ///< time integrated after T with the final potential
  ScheduleKind schedule = ScheduleKind::kLinear;

  /// Config for drag time T with the default hold of 0.2 T.
  static DragConfig with_duration(double duration);

  /// Throws std::invalid_argument unless T > 0, 0 < dt <= T, hold >= 0.
  void validate() const;
};

/// Velocity kicks: at t = period, 2 period, ... <= T every omega_i receives
/// an independent uniform increment in [-amplitude, amplitude].
struct NoiseSpec {
  double amplitude = 0.0;
  double period = 10.0;
  bool enabled = false;

  static NoiseSpec kicks(double amplitude, double period = 10.0) {
    return NoiseSpec{amplitude, period, true};
  }
  void validate() const;
};

struct CompassState {
  std::vector<double> theta;
  std::vector<double> omega;
  double t = 0.0;

  std::size_t size() const { return theta.size(); }
  bool operator==(const CompassState&) const = default;
};

/// theta_i = pi/2, omega_i = 0: the minimum of the transverse potential.
CompassState transverse_ground_state(std::size_t n);

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(double t, const std::string& what);
  double time() const { return t_; }

 private:
  double t_;
};

/// Precomputed neighbour structure for evaluating V and dV/dtheta.
class CompassModel {
 public:
  explicit CompassModel(const IsingInstance& instance);

  std::size_t size() const { return fields_.size(); }

  double potential(std::span<const double> theta, ScheduleValue ab, double bx) const;

  /// Analytic gradient:
  ///   dV/dtheta_i = -A Bx cos(theta_i) + B sin(theta_i) (h_i + sum_j J_ij cos(theta_j))
  void gradient(std::span<const double> theta, ScheduleValue ab, double bx,
                std::span<double> out) const;

  /// Same, with cos/sin already evaluated.
  void gradient_from_trig(std::span<const double> cos_theta,
                          std::span<const double> sin_theta, ScheduleValue ab,
                          double bx, std::span<double> out) const;

 private:
  std::vector<double> fields_;
  NeighborTable neighbors_;
};

/// Convenience wrappers; throw std::invalid_argument on a length mismatch.
double potential(const IsingInstance& instance, std::span<const double> theta,
                 ScheduleValue ab, double bx);
std::vector<double> gradient(const IsingInstance& instance, std::span<const double> theta,
                             ScheduleValue ab, double bx);

double residual_kinetic_energy(const CompassState& state);

/// Kinetic plus potential energy at the schedule value of state.t.
double total_energy(const CompassModel& model, const CompassState& state,
                    const DragConfig& config);

/// Velocity-Verlet stepping that carries the force between steps, so each
/// step costs one gradient evaluation.
class VerletIntegrator {
 public:
  VerletIntegrator(const CompassModel& model, const DragConfig& config);

  /// Evaluates the force at state.t. Must be called before advance() and
  /// again whenever theta or t is changed externally.
  void prime(const CompassState& state);

  /// Half-kick, drift, force at t_next, half-kick. Throws DivergenceError if
  /// any value becomes non-finite or |omega_i| exceeds the guard.
  void advance(CompassState& state, double t_next);

  static constexpr double kOmegaGuard = 1e3;

 private:
  void compute_force(std::span<const double> theta, double t);

  const CompassModel& model_;
  DragConfig config_;
  std::vector<double> force_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// One velocity-Verlet step of length config.dt from a fresh force
/// evaluation. Deterministic.
CompassState step(const CompassState& state, const CompassModel& model,
                  const DragConfig& config);

void apply_kick(CompassState& state, const NoiseSpec& noise, Rng& rng);

struct RunOptions {
  /// Record every k-th step (and the final state); 0 disables recording.
  std::size_t trajectory_stride = 0;
};

struct RunDiagnostics {
  double residual_ke = 0.0;   ///< at the end of the run (after hold)
  double drag_end_ke = 0.0;   ///< at t = T
  double mean_hold_ke = 0.0;  ///< time average over the hold, 0 without hold
  double final_potential = 0.0;
  std::size_t steps = 0;
  std::size_t kicks = 0;
};

struct DragResult {
  CompassState final_state;
  CompassState drag_end_state;
  RunDiagnostics diagnostics;
  std::vector<CompassState> trajectory;
};

/// Drags from the transverse ground state to the Ising potential over T,
/// then holds for config.hold. Kicks draw from `rng`, which is left
/// positioned after the last kick.
DragResult run_drag(const CompassModel& model, const DragConfig& config,
                    const NoiseSpec& noise, Rng& rng, const RunOptions& options = {});

DragResult run_drag(const IsingInstance& instance, const DragConfig& config,
                    const NoiseSpec& noise, std::uint64_t seed,
                    const RunOptions& options = {});

/// CSV with header t,theta_0..theta_{n-1},omega_0..omega_{n-1}.
void write_trajectory_csv(std::ostream& out, std::span<const CompassState> samples);

}  // namespace compass
