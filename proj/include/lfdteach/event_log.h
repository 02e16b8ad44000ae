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

// Append-only JSON-lines event log for study sessions. Each line is
//   {"ts": ISO-8601 UTC, "session": id, "event": kind, "payload": {...}}
// with kind one of "created", "preview", "commit".

#ifndef LFDTEACH_EVENT_LOG_H_
#define LFDTEACH_EVENT_LOG_H_

#include <cstddef>
#include <istream>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lfdteach/session.h"

namespace lfdteach {

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Appends one line per event to a file opened with O_APPEND; each event is
// a single write(2) so a crash never leaves a partially interleaved line.
class JsonlFileSink : public EventSink {
 public:
  explicit JsonlFileSink(const std::string& path);
  ~JsonlFileSink() override;
  JsonlFileSink(const JsonlFileSink&) = delete;
  JsonlFileSink& operator=(const JsonlFileSink&) = delete;

  void Append(const nlohmann::json& event) override;

 private:
  std::mutex mu_;
  int fd_ = -1;
};

// In-memory sink, mostly for tests.
class MemorySink : public EventSink {
 public:
  void Append(const nlohmann::json& event) override;
  std::vector<std::string> lines() const;
  std::string text() const;  // all lines, newline-terminated

 private:
  mutable std::mutex mu_;
  std::vector<std::string> lines_;
};

// Wire forms shared by the log and the HTTP API.
nlohmann::json ToJson(const State& x);
nlohmann::json ToJson(const PhaseSpec& spec);
nlohmann::json ToJson(const PhaseResult& result);
nlohmann::json ToJson(const StudyRecord& record);
// Throws nlohmann::json exceptions or DomainError on malformed input.
State StateFromJson(const nlohmann::json& j);
ViaPointPair PointsFromJson(const nlohmann::json& j);
PhaseResult PhaseResultFromJson(const nlohmann::json& j);

// Rebuilds every session from an event stream, in creation order. Blank
// lines are skipped; anything else malformed raises ReplayError naming the
// 1-based line number.
std::vector<Session> ReplayLog(std::istream& in);

std::string UtcTimestamp();

}  // namespace lfdteach

#endif  // LFDTEACH_EVENT_LOG_H_
