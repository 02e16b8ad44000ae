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

#ifndef LFDTEACH_EVALUATION_H_
#define LFDTEACH_EVALUATION_H_

#include "lfdteach/dynamics.h"
#include "lfdteach/types.h"

namespace lfdteach {

struct EvalResult {
  double rmse = 0.0;
  double l2 = 0.0;
  // Set when the learnt rollout diverged; rmse is then +infinity.
  bool diverged = false;

  friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

// Mean over all logged states of the Euclidean state distance between the
// two trajectories. Throws DomainError on a length or dt mismatch.
double Rmse(const Trajectory& traj, const Trajectory& ref);

// Euclidean distance between two parameter vectors.
double L2Error(const SkillParams& w, const SkillParams& w_star);

// Rolls out w and w_star from x0 and compares them. A diverging learnt
// rollout yields {rmse = +inf, diverged = true}; a diverging target
// rollout propagates the DivergenceError.
EvalResult EvaluateLearner(const SkillParams& w, const SkillParams& w_star,
                           const State& x0, double duration,
                           const PendulumParams& p);

// Same, against a precomputed target trajectory.
EvalResult EvaluateAgainst(const SkillParams& w, const SkillParams& w_star,
                           const Trajectory& reference,
                           const PendulumParams& p);

}  // namespace lfdteach

#endif  // LFDTEACH_EVALUATION_H_
