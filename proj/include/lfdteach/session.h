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

// Teaching-study sessions. A participant moves through six phases; in each
// phase they may preview any number of via-point pairs and then commit
// exactly one, which is labelled with noisy target actions, learnt from and
// scored. Only the target group sees the quality score, and only in P3.

#ifndef LFDTEACH_SESSION_H_
#define LFDTEACH_SESSION_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lfdteach/dynamics.h"
#include "lfdteach/evaluation.h"
#include "lfdteach/experiments.h"
#include "lfdteach/skills.h"
#include "lfdteach/types.h"

namespace lfdteach {

struct PhaseSpec {
  int index = 1;  // 1..6
  SkillId skill = SkillId::kS1;
  bool guided = false;

  friend bool operator==(const PhaseSpec&, const PhaseSpec&) = default;
};

// P1 S1, P2 S2, P3 S1, P4 S2, P5 S1, P6 S2; guided only for the target
// group in P3. Throws DomainError for an index outside 1..6.
PhaseSpec PhaseFor(Group group, int index);

// A participant's two chosen states.
using ViaPointPair = std::array<State, 2>;

struct PointIssue {
  int point = 0;  // 0 or 1
  std::string message;
};

// Each point must be finite with |phi(x)| <= 1.
std::vector<PointIssue> ValidateViaPoints(const ViaPointPair& points);

struct PreviewResult {
  bool valid = false;
  std::optional<double> score;  // present iff valid and the phase is guided
  std::vector<PointIssue> errors;
};

struct PhaseResult {
  PhaseSpec spec;
  ViaPointPair points{};
  ActionVector actions{};
  SkillParams learnt;
  double det_phi = 0.0;
  double score = 0.0;
  // rmse is stored capped (CapForLogging) so sessions survive a JSON round
  // trip unchanged; `diverged` records that the cap was hit.
  EvalResult eval;

  friend bool operator==(const PhaseResult&, const PhaseResult&) = default;
};

enum class SessionStatus { kActive, kComplete };

struct Session {
  std::string id;
  Group group = Group::kTarget;
  std::uint64_t seed = 0;  // commit noise for phase i uses Rng(seed).Split(i)
  std::vector<PhaseResult> committed;
  std::size_t previews = 0;

  SessionStatus status() const {
    return committed.size() >= static_cast<std::size_t>(kPhaseCount)
               ? SessionStatus::kComplete
               : SessionStatus::kActive;
  }
  // 1..6; stays at 6 once complete.
  int phase_index() const {
    return std::min(static_cast<int>(committed.size()) + 1, kPhaseCount);
  }
  std::optional<PhaseSpec> current_phase() const;

  friend bool operator==(const Session&, const Session&) = default;
};

class SessionError : public std::runtime_error {
 public:
  enum class Kind { kNotFound, kComplete, kInvalidPoints, kStalePhase };
  SessionError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct ServiceConfig {
  std::uint64_t seed = 0;
  double action_sigma = 0.1;  // std of the committed action noise
  double lambda = 1e-6;
  PendulumParams pendulum;
};

// Pure session logic, independent of storage.
PreviewResult PreviewPoints(const Session& session, const ViaPointPair& points);
PhaseResult CommitPoints(const Session& session, const ViaPointPair& points,
                         const ServiceConfig& cfg);
StudyRecord ToStudyRecord(const Session& session);

// Destination for session events; implementations must make each Append
// durable as one line.
class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void Append(const nlohmann::json& event) = 0;
};

struct CommitResult {
  PhaseResult result;
  std::optional<PhaseSpec> next_phase;
  bool done = false;
};

// Thread-safe session store. Sessions are mutated one at a time each, and
// every mutation is appended to the sink while the session is locked.
class SessionService {
 public:
  // `sink` may be null (no persistence). It must outlive the service.
  explicit SessionService(ServiceConfig cfg, EventSink* sink = nullptr);

  // Replaces all state with previously persisted sessions.
  void Restore(const std::vector<Session>& sessions);

  // nullopt assigns the group at random from the service seed.
  Session Create(std::optional<Group> group);
  Session Get(const std::string& id) const;
  PreviewResult Preview(const std::string& id, const ViaPointPair& points);
  // `expected_phase`, when given, must match the session's current phase.
  CommitResult Commit(const std::string& id, const ViaPointPair& points,
                      std::optional<int> expected_phase = std::nullopt);
  StudyRecord Report(const std::string& id) const;
  // All sessions in creation order.
  std::vector<Session> Snapshot() const;

  const ServiceConfig& config() const { return cfg_; }

 private:
  struct Entry {
    mutable std::mutex mu;
    Session session;
  };

  std::shared_ptr<Entry> Find(const std::string& id) const;
  void Emit(const std::string& session_id, const char* event,
            nlohmann::json payload);

  ServiceConfig cfg_;
  EventSink* sink_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::vector<std::string> order_;  // creation order
  std::uint64_t created_ = 0;
};

}  // namespace lfdteach

#endif  // LFDTEACH_SESSION_H_
