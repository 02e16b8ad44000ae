// Copyright 2026 The lfdteach Authors
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

#ifndef LFDTEACH_DYNAMICS_H_
#define LFDTEACH_DYNAMICS_H_

#include <cstddef>
#include <ostream>
#include <vector>

#include "lfdteach/types.h"

namespace lfdteach {

// Point-mass pendulum, angle measured from the downward vertical:
//   m L^2 q'' = -m g L sin(q) + tau
struct PendulumParams {
  double mass = 1.0;      // kg
  double length = 1.0;    // m
  double gravity = 9.81;  // m/s^2
  double dt = 1e-4;       // s (10 kHz)

  // Throws DomainError unless all fields are positive and dt <= 1e-2.
  void Validate() const;
  friend bool operator==(const PendulumParams&,
                         const PendulumParams&) = default;
};

struct Trajectory {
  double dt = 0.0;
  std::vector<State> states;
  std::vector<double> torques;  // torques[i] drives states[i] -> states[i+1]

  std::size_t steps() const { return torques.size(); }
};

// Rollouts abort once |velocity| exceeds this bound.
inline constexpr double kDivergenceVelocity = 1e6;

// Torque applied by the skill controller. The demonstrated action is
// w^T phi(x); the motor applies its negative (negative feedback).
double AppliedTorque(const SkillParams& w, const State& x);

// One semi-implicit Euler step: velocity is updated first and the new
// velocity advances the angle.
State Step(const State& x, double torque, const PendulumParams& p);

// Closed-loop simulation of controller w from x0 for `duration` seconds.
// duration must be a positive whole number of dt steps. Throws
// DivergenceError naming the first step whose result is non-finite or
// exceeds kDivergenceVelocity.
Trajectory Rollout(const SkillParams& w, const State& x0, double duration,
                   const PendulumParams& p);

// Closed-loop energy per unit m L^2 for the undamped part of controller w:
//   E = v^2 / 2 - (g / L + k / (m L^2)) cos(q)
double ClosedLoopEnergy(const SkillParams& w, const State& x,
                        const PendulumParams& p);

// Writes `t,angle,velocity,torque`, one row every `stride` steps over the
// states that have an applied torque (the terminal state is not logged).
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj,
                        std::size_t stride = 10);

}  // namespace lfdteach

#endif  // LFDTEACH_DYNAMICS_H_
