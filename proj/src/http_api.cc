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

#include "lfdteach/http_api.h"

#include <charconv>
#include <exception>
#include <optional>

#include "httplib.h"
#include "json.hpp"
#include "lfdteach/event_log.h"
#include "lfdteach/skills.h"

namespace lfdteach {
namespace {

using nlohmann::json;

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, const std::string& msg) {
  Reply(res, status, {{"error", msg}});
}

int StatusFor(SessionError::Kind kind) {
  switch (kind) {
    case SessionError::Kind::kNotFound:
      return 404;
    case SessionError::Kind::kComplete:
    case SessionError::Kind::kStalePhase:
      return 409;
    case SessionError::Kind::kInvalidPoints:
      return 422;
  }
  return 500;
}

json PhaseJson(const std::optional<PhaseSpec>& phase) {
  return phase ? ToJson(*phase) : json(nullptr);
}

json SessionJson(const Session& s) {
  return {{"id", s.id},
          {"group", GroupName(s.group)},
          {"status",
           s.status() == SessionStatus::kComplete ? "complete" : "active"},
          {"phase", PhaseJson(s.current_phase())},
          {"committed", s.committed.size()}};
}

json IssuesJson(const std::vector<PointIssue>& issues) {
  json out = json::array();
  for (const PointIssue& i : issues) {
    out.push_back({{"point", i.point}, {"message", i.message}});
  }
  return out;
}

// Runs `fn`, mapping exceptions onto HTTP errors.
template <typename Fn>
void Guard(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const SessionError& e) {
    ReplyError(res, StatusFor(e.kind()), e.what());
  } catch (const json::exception& e) {
    ReplyError(res, 400, std::string("malformed request: ") + e.what());
  } catch (const DomainError& e) {
    ReplyError(res, 400, e.what());
  } catch (const std::exception& e) {
    ReplyError(res, 500, e.what());
  }
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

struct HttpApi::Impl {
  SessionService& service;
  HttpOptions options;
  httplib::Server server;

  Impl(SessionService& s, HttpOptions o) : service(s), options(o) {}
  void Routes();
};

void HttpApi::Impl::Routes() {
  server.Post("/api/sessions", [this](const httplib::Request& req,
                                      httplib::Response& res) {
    Guard(res, [&] {
      const json body = ParseBody(req);
      std::optional<Group> group;
      const std::string name = body.value("group", std::string("random"));
      if (name != "random") {
        group = ParseGroup(name);
        if (!group) {
          ReplyError(res, 400, "group must be target, control or random");
          return;
        }
      }
      const Session s = service.Create(group);
      Reply(res, 201, {{"id", s.id}, {"phase", PhaseJson(s.current_phase())}});
    });
  });

  server.Get("/api/sessions/:id", [this](const httplib::Request& req,
                                         httplib::Response& res) {
    Guard(res, [&] {
      Reply(res, 200, SessionJson(service.Get(req.path_params.at("id"))));
    });
  });

  server.Post("/api/sessions/:id/preview", [this](const httplib::Request& req,
                                                  httplib::Response& res) {
    Guard(res, [&] {
      const json body = ParseBody(req);
      const ViaPointPair points = PointsFromJson(body.at("points"));
      const PreviewResult r =
          service.Preview(req.path_params.at("id"), points);
      json out{{"valid", r.valid}};
      if (r.score) out["score"] = *r.score;
      if (!r.errors.empty()) out["errors"] = IssuesJson(r.errors);
      Reply(res, 200, out);
    });
  });

  server.Post("/api/sessions/:id/commit", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
    Guard(res, [&] {
      const json body = ParseBody(req);
      const ViaPointPair points = PointsFromJson(body.at("points"));
      const std::vector<PointIssue> issues = ValidateViaPoints(points);
      if (!issues.empty()) {
        Reply(res, 422, {{"error", "invalid points"},
                         {"errors", IssuesJson(issues)}});
        return;
      }
      std::optional<int> expected;
      if (body.contains("phase")) expected = body.at("phase").get<int>();
      const CommitResult r =
          service.Commit(req.path_params.at("id"), points, expected);
      Reply(res, 200, {{"phase_complete", true},
                       {"next_phase", PhaseJson(r.next_phase)},
                       {"done", r.done}});
    });
  });

  server.Get("/api/sessions/:id/report", [this](const httplib::Request& req,
                                                httplib::Response& res) {
    if (!options.experimenter) {
      ReplyError(res, 404, "report endpoint disabled");
      return;
    }
    Guard(res, [&] {
      Reply(res, 200, ToJson(service.Report(req.path_params.at("id"))));
    });
  });

  server.Get("/api/skills/:id/reference", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
    Guard(res, [&] {
      const auto id = ParseSkillId(req.path_params.at("id"));
      if (!id) {
        ReplyError(res, 404, "unknown skill");
        return;
      }
      std::size_t stride = options.default_stride;
      if (req.has_param("stride")) {
        const std::string text = req.get_param_value("stride");
        long long value = 0;
        const auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || ptr != text.data() + text.size() ||
            value < 1) {
          ReplyError(res, 400, "stride must be a positive integer");
          return;
        }
        stride = static_cast<std::size_t>(value);
      }
      const SkillSpec spec = GetSkill(*id);
      const PendulumParams& p = service.config().pendulum;
      const auto traj = ReferenceTrajectory(spec, p);
      json samples = json::array();
      for (std::size_t i = 0; i < traj->states.size(); i += stride) {
        const State& x = traj->states[i];
        json sample{{"t", static_cast<double>(i) * traj->dt},
                    {"angle", x.angle},
                    {"velocity", x.velocity}};
        if (i < traj->torques.size()) sample["torque"] = traj->torques[i];
        samples.push_back(std::move(sample));
      }
      Reply(res, 200, {{"skill", SkillName(*id)},
                       {"dt", traj->dt},
                       {"stride", stride},
                       {"samples", std::move(samples)}});
    });
  });
}

HttpApi::HttpApi(SessionService& service, HttpOptions options)
    : impl_(std::make_unique<Impl>(service, options)) {
  impl_->Routes();
}

HttpApi::~HttpApi() { Stop(); }

int HttpApi::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpApi::Listen() { return impl_->server.listen_after_bind(); }

void HttpApi::Stop() {
  if (impl_) impl_->server.stop();
}

void HttpApi::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace lfdteach
