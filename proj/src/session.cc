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

#include "lfdteach/session.h"

#include <cmath>
#include <cstdio>

#include "lfdteach/event_log.h"
#include "lfdteach/learner.h"
#include "lfdteach/machine_teaching.h"
#include "lfdteach/rng.h"

namespace lfdteach {
namespace {

std::string HexId(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json PointsJson(const ViaPointPair& points) {
  return nlohmann::json::array({ToJson(points[0]), ToJson(points[1])});
}

}  // namespace

PhaseSpec PhaseFor(Group group, int index) {
  if (index < 1 || index > kPhaseCount) {
    throw DomainError("phase index must lie in 1..6");
  }
  PhaseSpec spec;
  spec.index = index;
  spec.skill = index % 2 == 1 ? SkillId::kS1 : SkillId::kS2;
  spec.guided = index == 3 && group == Group::kTarget;
  return spec;
}

std::optional<PhaseSpec> Session::current_phase() const {
  if (status() == SessionStatus::kComplete) return std::nullopt;
  return PhaseFor(group, phase_index());
}

std::vector<PointIssue> ValidateViaPoints(const ViaPointPair& points) {
  std::vector<PointIssue> issues;
  for (int i = 0; i < 2; ++i) {
    const State& x = points[i];
    if (!x.finite()) {
      issues.push_back({i, "angle and velocity must be finite numbers"});
      continue;
    }
    const double norm = FeatureMap(x).norm();
    if (norm > 1.0) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "feature norm %.4g exceeds 1 (sin^2(angle) + velocity^2 "
                    "must not exceed 1)",
                    norm);
      issues.push_back({i, buf});
    }
  }
  return issues;
}

PreviewResult PreviewPoints(const Session& session,
                            const ViaPointPair& points) {
  const auto phase = session.current_phase();
  if (!phase) {
    throw SessionError(SessionError::Kind::kComplete,
                       "session " + session.id + " is complete");
  }
  PreviewResult result;
  result.errors = ValidateViaPoints(points);
  result.valid = result.errors.empty();
  if (result.valid && phase->guided) result.score = TeachingScore(points);
  return result;
}

PhaseResult CommitPoints(const Session& session, const ViaPointPair& points,
                         const ServiceConfig& cfg) {
  const auto phase = session.current_phase();
  if (!phase) {
    throw SessionError(SessionError::Kind::kComplete,
                       "session " + session.id + " is complete");
  }
  const std::vector<PointIssue> issues = ValidateViaPoints(points);
  if (!issues.empty()) {
    throw SessionError(SessionError::Kind::kInvalidPoints,
                       "point " + std::to_string(issues.front().point) + ": " +
                           issues.front().message);
  }

  const SkillSpec skill = GetSkill(phase->skill);
  Rng rng = Rng(session.seed).Split(static_cast<std::uint64_t>(phase->index));
  const NoiseModel noise{cfg.action_sigma};

  PhaseResult r;
  r.spec = *phase;
  r.points = points;
  for (int i = 0; i < 2; ++i) {
    r.actions[i] = NoisyAction(skill.w_star, points[i], noise, rng);
  }
  const FeatureMatrix phi = BuildFeatureMatrix(points);
  r.det_phi = Determinant(phi);
  r.score = TeachingScore(points);
  if (cfg.lambda > 0.0 || std::abs(r.det_phi) >= kSingularDetThreshold) {
    r.learnt = RidgeFit(phi, r.actions, cfg.lambda);
    const auto reference = ReferenceTrajectory(skill, cfg.pendulum);
    r.eval = EvaluateAgainst(r.learnt, skill.w_star, *reference, cfg.pendulum);
  } else {
    // Unregularised learner with a singular Phi learns nothing usable.
    r.eval.l2 = L2Error(r.learnt, skill.w_star);
    r.eval.rmse = kLoggedValueCap;
    r.eval.diverged = true;
  }
  r.eval.rmse = CapForLogging(r.eval.rmse);
  return r;
}

StudyRecord ToStudyRecord(const Session& session) {
  StudyRecord record;
  record.participant = session.id;
  record.group = session.group;
  for (const PhaseResult& r : session.committed) {
    record.phases.push_back(
        {r.spec.index, r.det_phi, r.score, r.eval.rmse, r.eval.l2});
  }
  return record;
}

SessionService::SessionService(ServiceConfig cfg, EventSink* sink)
    : cfg_(std::move(cfg)), sink_(sink) {}

void SessionService::Restore(const std::vector<Session>& sessions) {
  std::unique_lock lock(map_mu_);
  sessions_.clear();
  order_.clear();
  for (const Session& s : sessions) {
    auto entry = std::make_shared<Entry>();
    entry->session = s;
    sessions_[s.id] = entry;
    order_.push_back(s.id);
  }
  created_ = sessions.size();
}

void SessionService::Emit(const std::string& session_id, const char* event,
                          nlohmann::json payload) {
  if (sink_ == nullptr) return;
  sink_->Append({{"ts", UtcTimestamp()},
                 {"session", session_id},
                 {"event", event},
                 {"payload", std::move(payload)}});
}

std::shared_ptr<SessionService::Entry> SessionService::Find(
    const std::string& id) const {
  std::shared_lock lock(map_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw SessionError(SessionError::Kind::kNotFound,
                       "unknown session '" + id + "'");
  }
  return it->second;
}

Session SessionService::Create(std::optional<Group> group) {
  auto entry = std::make_shared<Entry>();
  std::unique_lock lock(map_mu_);
  std::string id;
  for (;;) {
    Rng stream = Rng(cfg_.seed).Split(created_++);
    id = HexId(stream.NextU64());
    entry->session.seed = stream.NextU64();
    const bool coin = (stream.NextU64() >> 63) != 0;
    if (!group) group = coin ? Group::kTarget : Group::kControl;
    if (!sessions_.contains(id)) break;
  }
  entry->session.id = id;
  entry->session.group = *group;
  sessions_[id] = entry;
  order_.push_back(id);

  std::lock_guard session_lock(entry->mu);
  lock.unlock();
  Emit(id, "created",
       {{"group", GroupName(entry->session.group)},
        {"seed", entry->session.seed}});
  return entry->session;
}

Session SessionService::Get(const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard lock(entry->mu);
  return entry->session;
}

PreviewResult SessionService::Preview(const std::string& id,
                                      const ViaPointPair& points) {
  auto entry = Find(id);
  std::lock_guard lock(entry->mu);
  const PreviewResult result = PreviewPoints(entry->session, points);
  ++entry->session.previews;

  nlohmann::json payload{{"phase", entry->session.phase_index()},
                         {"points", PointsJson(points)},
                         {"valid", result.valid}};
  if (result.score) payload["score"] = *result.score;
  Emit(id, "preview", std::move(payload));
  return result;
}

CommitResult SessionService::Commit(const std::string& id,
                                    const ViaPointPair& points,
                                    std::optional<int> expected_phase) {
  auto entry = Find(id);
  std::lock_guard lock(entry->mu);
  Session& s = entry->session;
  if (expected_phase && s.status() == SessionStatus::kActive &&
      *expected_phase != s.phase_index()) {
    throw SessionError(SessionError::Kind::kStalePhase,
                       "session is in phase " +
                           std::to_string(s.phase_index()) + ", not " +
                           std::to_string(*expected_phase));
  }
  CommitResult out;
  out.result = CommitPoints(s, points, cfg_);
  s.committed.push_back(out.result);
  out.next_phase = s.current_phase();
  out.done = s.status() == SessionStatus::kComplete;
  Emit(id, "commit", ToJson(out.result));
  return out;
}

StudyRecord SessionService::Report(const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard lock(entry->mu);
  return ToStudyRecord(entry->session);
}

std::vector<Session> SessionService::Snapshot() const {
  std::vector<std::shared_ptr<Entry>> entries;
  {
    std::shared_lock lock(map_mu_);
    for (const std::string& id : order_) entries.push_back(sessions_.at(id));
  }
  std::vector<Session> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    std::lock_guard lock(e->mu);
    out.push_back(e->session);
  }
  return out;
}

}  // namespace lfdteach
