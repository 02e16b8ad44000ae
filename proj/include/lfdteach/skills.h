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

#ifndef LFDTEACH_SKILLS_H_
#define LFDTEACH_SKILLS_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "lfdteach/dynamics.h"
#include "lfdteach/types.h"

namespace lfdteach {

enum class SkillId { kS1, kS2 };

struct SkillSpec {
  SkillId id = SkillId::kS1;
  SkillParams w_star;
  std::string description;
  State x0{kPi / 2, 0.0};
  double duration = 3.0;
};

// "s1" / "s2" (case-insensitive, "S1" accepted).
std::optional<SkillId> ParseSkillId(std::string_view text);
std::string_view SkillName(SkillId id);  // "s1" / "s2"

// S1: undamped oscillation, w* = (g/L, 0).
// S2: fast motion without overshoot, w* = (g/L, 2 sqrt(2 g/L)), which
// critically damps the linearised closed loop q'' = -2 g/L q - d q'.
SkillSpec GetSkill(SkillId id);
// Throws DomainError for unknown names.
SkillSpec GetSkill(std::string_view name);

// Target-controller rollout for the skill. Results are cached per
// (skill, pendulum parameters) behind a mutex; the returned pointer stays
// valid for the life of the process.
std::shared_ptr<const Trajectory> ReferenceTrajectory(const SkillSpec& spec,
                                                      const PendulumParams& p);

}  // namespace lfdteach

#endif  // LFDTEACH_SKILLS_H_
