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

#include "lfdteach/skills.h"

#include <cctype>
#include <cmath>
#include <mutex>
#include <vector>

namespace lfdteach {
namespace {

constexpr double kGravity = 9.81;
constexpr double kLength = 1.0;

struct CacheEntry {
  SkillParams w_star;
  State x0;
  double duration;
  PendulumParams params;
  std::shared_ptr<const Trajectory> traj;
};

std::mutex cache_mutex;
std::vector<CacheEntry>& Cache() {
  static std::vector<CacheEntry> cache;
  return cache;
}

}  // namespace

std::optional<SkillId> ParseSkillId(std::string_view text) {
  if (text.size() != 2 ||
      std::tolower(static_cast<unsigned char>(text[0])) != 's') {
    return std::nullopt;
  }
  if (text[1] == '1') return SkillId::kS1;
  if (text[1] == '2') return SkillId::kS2;
  return std::nullopt;
}

std::string_view SkillName(SkillId id) {
  return id == SkillId::kS1 ? "s1" : "s2";
}

SkillSpec GetSkill(SkillId id) {
  SkillSpec spec;
  spec.id = id;
  const double stiffness = kGravity / kLength;
  switch (id) {
    case SkillId::kS1:
      spec.w_star = {stiffness, 0.0};
      spec.description = "undamped oscillation";
      break;
    case SkillId::kS2:
      spec.w_star = {stiffness, 2.0 * std::sqrt(2.0 * kGravity / kLength)};
      spec.description = "rapid movement without overshoot";
      break;
  }
  return spec;
}

SkillSpec GetSkill(std::string_view name) {
  const auto id = ParseSkillId(name);
  if (!id) throw DomainError("unknown skill '" + std::string(name) + "'");
  return GetSkill(*id);
}

std::shared_ptr<const Trajectory> ReferenceTrajectory(const SkillSpec& spec,
                                                      const PendulumParams& p) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  for (const CacheEntry& e : Cache()) {
    if (e.w_star == spec.w_star && e.x0 == spec.x0 &&
        e.duration == spec.duration && e.params == p) {
      return e.traj;
    }
  }
  auto traj = std::make_shared<const Trajectory>(
      Rollout(spec.w_star, spec.x0, spec.duration, p));
  Cache().push_back({spec.w_star, spec.x0, spec.duration, p, traj});
  return traj;
}

}  // namespace lfdteach
