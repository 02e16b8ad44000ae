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

#include "lfdteach/event_log.h"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <map>

namespace lfdteach {

using nlohmann::json;

ReplayError::ReplayError(std::size_t line, const std::string& message)
    : std::runtime_error("event log line " + std::to_string(line) + ": " +
                         message),
      line_(line) {}

JsonlFileSink::JsonlFileSink(const std::string& path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw std::runtime_error("cannot open event log '" + path +
                             "': " + std::strerror(errno));
  }
}

JsonlFileSink::~JsonlFileSink() {
  if (fd_ >= 0) ::close(fd_);
}

void JsonlFileSink::Append(const json& event) {
  const std::string line = event.dump() + "\n";
  std::lock_guard lock(mu_);
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n =
        ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error(std::string("event log write failed: ") +
                               std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
}

void MemorySink::Append(const json& event) {
  std::lock_guard lock(mu_);
  lines_.push_back(event.dump());
}

std::vector<std::string> MemorySink::lines() const {
  std::lock_guard lock(mu_);
  return lines_;
}

std::string MemorySink::text() const {
  std::lock_guard lock(mu_);
  std::string out;
  for (const std::string& l : lines_) out += l + "\n";
  return out;
}

json ToJson(const State& x) {
  return {{"angle", x.angle}, {"velocity", x.velocity}};
}

json ToJson(const PhaseSpec& spec) {
  return {{"index", spec.index},
          {"skill", SkillName(spec.skill)},
          {"guided", spec.guided}};
}

json ToJson(const PhaseResult& r) {
  return {{"phase", ToJson(r.spec)},
          {"points", json::array({ToJson(r.points[0]), ToJson(r.points[1])})},
          {"actions", json::array({r.actions[0], r.actions[1]})},
          {"learnt",
           {{"stiffness", r.learnt.stiffness}, {"damping", r.learnt.damping}}},
          {"det_phi", r.det_phi},
          {"score", r.score},
          {"rmse", r.eval.rmse},
          {"l2", r.eval.l2},
          {"diverged", r.eval.diverged}};
}

json ToJson(const StudyRecord& record) {
  json phases = json::array();
  for (const PhaseMetrics& pm : record.phases) {
    phases.push_back({{"phase", pm.phase},
                      {"det_phi", pm.det_phi},
                      {"score", pm.score},
                      {"rmse", pm.rmse},
                      {"l2", pm.l2}});
  }
  return {{"participant", record.participant},
          {"group", GroupName(record.group)},
          {"phases", std::move(phases)}};
}

State StateFromJson(const json& j) {
  return {j.at("angle").get<double>(), j.at("velocity").get<double>()};
}

ViaPointPair PointsFromJson(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw DomainError("expected exactly two points");
  }
  return {StateFromJson(j[0]), StateFromJson(j[1])};
}

PhaseResult PhaseResultFromJson(const json& j) {
  PhaseResult r;
  const json& phase = j.at("phase");
  r.spec.index = phase.at("index").get<int>();
  const auto skill = ParseSkillId(phase.at("skill").get<std::string>());
  if (!skill) throw DomainError("unknown skill in phase record");
  r.spec.skill = *skill;
  r.spec.guided = phase.at("guided").get<bool>();
  r.points = PointsFromJson(j.at("points"));
  const json& actions = j.at("actions");
  if (!actions.is_array() || actions.size() != 2) {
    throw DomainError("expected two actions");
  }
  r.actions = {actions[0].get<double>(), actions[1].get<double>()};
  r.learnt = {j.at("learnt").at("stiffness").get<double>(),
              j.at("learnt").at("damping").get<double>()};
  r.det_phi = j.at("det_phi").get<double>();
  r.score = j.at("score").get<double>();
  r.eval.rmse = j.at("rmse").get<double>();
  r.eval.l2 = j.at("l2").get<double>();
  r.eval.diverged = j.at("diverged").get<bool>();
  return r;
}

std::vector<Session> ReplayLog(std::istream& in) {
  std::vector<Session> sessions;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json event = json::parse(line);
      const std::string id = event.at("session").get<std::string>();
      const std::string kind = event.at("event").get<std::string>();
      const json& payload = event.at("payload");
      event.at("ts").get<std::string>();

      if (kind == "created") {
        if (index.contains(id)) throw DomainError("duplicate session " + id);
        Session s;
        s.id = id;
        const auto group = ParseGroup(payload.at("group").get<std::string>());
        if (!group) throw DomainError("unknown group");
        s.group = *group;
        s.seed = payload.at("seed").get<std::uint64_t>();
        index[id] = sessions.size();
        sessions.push_back(std::move(s));
        continue;
      }

      auto it = index.find(id);
      if (it == index.end()) throw DomainError("unknown session " + id);
      Session& s = sessions[it->second];
      if (kind == "preview") {
        if (s.status() == SessionStatus::kComplete) {
          throw DomainError("preview after completion");
        }
        ++s.previews;
      } else if (kind == "commit") {
        const auto phase = s.current_phase();
        if (!phase) throw DomainError("commit after completion");
        PhaseResult r = PhaseResultFromJson(payload);
        if (!(r.spec == *phase)) {
          throw DomainError("commit for phase " +
                            std::to_string(r.spec.index) +
                            " out of protocol order");
        }
        s.committed.push_back(std::move(r));
      } else {
        throw DomainError("unknown event '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw ReplayError(lineno, e.what());
    } catch (const DomainError& e) {
      throw ReplayError(lineno, e.what());
    }
  }
  return sessions;
}

std::string UtcTimestamp() {
  using namespace std::chrono;
  const auto now = system_clock::now();
  const std::time_t secs = system_clock::to_time_t(now);
  const auto ms =
      duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

}  // namespace lfdteach
