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

#include "lfdteach/dynamics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace lfdteach {

void PendulumParams::Validate() const {
  if (!(mass > 0.0) || !(length > 0.0) || !(gravity > 0.0)) {
    throw DomainError("pendulum mass, length and gravity must be positive");
  }
  if (!(dt > 0.0) || dt > 1e-2) {
    throw DomainError("pendulum dt must lie in (0, 1e-2]");
  }
}

double AppliedTorque(const SkillParams& w, const State& x) {
  return -(w.stiffness * std::sin(x.angle) + w.damping * x.velocity);
}

State Step(const State& x, double torque, const PendulumParams& p) {
  const double inertia = p.mass * p.length * p.length;
  const double accel =
      -(p.gravity / p.length) * std::sin(x.angle) + torque / inertia;
  State next;
  next.velocity = x.velocity + p.dt * accel;
  next.angle = x.angle + p.dt * next.velocity;
  return next;
}

Trajectory Rollout(const SkillParams& w, const State& x0, double duration,
                   const PendulumParams& p) {
  p.Validate();
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw DomainError("rollout duration must be positive");
  }
  const double ratio = duration / p.dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-6 * std::max(1.0, ratio)) {
    throw DomainError("rollout duration must be a whole number of steps");
  }
  if (!x0.finite() || !w.finite()) {
    throw DomainError("rollout inputs must be finite");
  }

  const auto steps = static_cast<std::size_t>(rounded);
  Trajectory traj;
  traj.dt = p.dt;
  traj.states.reserve(steps + 1);
  traj.torques.reserve(steps);
  traj.states.push_back(x0);

  State x = x0;
  for (std::size_t i = 0; i < steps; ++i) {
    const double tau = AppliedTorque(w, x);
    x = Step(x, tau, p);
    if (!x.finite() || std::abs(x.velocity) > kDivergenceVelocity) {
      throw DivergenceError(i);
    }
    traj.torques.push_back(tau);
    traj.states.push_back(x);
  }
  return traj;
}

double ClosedLoopEnergy(const SkillParams& w, const State& x,
                        const PendulumParams& p) {
  const double inertia = p.mass * p.length * p.length;
  const double spring = p.gravity / p.length + w.stiffness / inertia;
  return 0.5 * x.velocity * x.velocity - spring * std::cos(x.angle);
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& traj,
                        std::size_t stride) {
  if (stride == 0) stride = 1;
  out << "t,angle,velocity,torque\n";
  char line[128];
  for (std::size_t i = 0; i < traj.steps(); i += stride) {
    const State& x = traj.states[i];
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g\n",
                  static_cast<double>(i) * traj.dt, x.angle, x.velocity,
                  traj.torques[i]);
    out << line;
  }
}

}  // namespace lfdteach
