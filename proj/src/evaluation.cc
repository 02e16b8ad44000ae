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

#include "lfdteach/evaluation.h"

#include <cmath>
#include <limits>

namespace lfdteach {

double Rmse(const Trajectory& traj, const Trajectory& ref) {
  if (traj.dt != ref.dt) throw DomainError("trajectory dt mismatch");
  if (traj.states.size() != ref.states.size()) {
    throw DomainError("trajectory length mismatch");
  }
  if (traj.states.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    sum += std::hypot(traj.states[i].angle - ref.states[i].angle,
                      traj.states[i].velocity - ref.states[i].velocity);
  }
  return sum / static_cast<double>(traj.states.size());
}

double L2Error(const SkillParams& w, const SkillParams& w_star) {
  return std::hypot(w.stiffness - w_star.stiffness,
                    w.damping - w_star.damping);
}

EvalResult EvaluateAgainst(const SkillParams& w, const SkillParams& w_star,
                           const Trajectory& reference,
                           const PendulumParams& p) {
  EvalResult result;
  result.l2 = L2Error(w, w_star);
  const double duration =
      static_cast<double>(reference.steps()) * reference.dt;
  try {
    const Trajectory learnt =
        Rollout(w, reference.states.front(), duration, p);
    result.rmse = Rmse(learnt, reference);
  } catch (const DivergenceError&) {
    result.rmse = std::numeric_limits<double>::infinity();
    result.diverged = true;
  }
  return result;
}

EvalResult EvaluateLearner(const SkillParams& w, const SkillParams& w_star,
                           const State& x0, double duration,
                           const PendulumParams& p) {
  const Trajectory reference = Rollout(w_star, x0, duration, p);
  return EvaluateAgainst(w, w_star, reference, p);
}

}  // namespace lfdteach
