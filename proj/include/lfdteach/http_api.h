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

// HTTP+JSON front end of the session service.
//
//   POST /api/sessions                 {"group": "target"|"control"|"random"}
//   GET  /api/sessions/{id}
//   POST /api/sessions/{id}/preview    {"points": [{angle, velocity}, x2]}
//   POST /api/sessions/{id}/commit     same body, optional "phase": index
//   GET  /api/sessions/{id}/report     only with experimenter endpoints on
//   GET  /api/skills/{id}/reference?stride=N
//
// Errors are {"error": message} with 400 (malformed body), 404 (unknown
// session or skill, disabled endpoint), 409 (completed session or stale
// phase) or 422 (points violating the normalisation bound).

#ifndef LFDTEACH_HTTP_API_H_
#define LFDTEACH_HTTP_API_H_

#include <cstddef>
#include <memory>
#include <string>

#include "lfdteach/session.h"

namespace lfdteach {

struct HttpOptions {
  bool experimenter = false;          // enables /report
  std::size_t default_stride = 200;   // 50 samples/s at 10 kHz
};

class HttpApi {
 public:
  HttpApi(SessionService& service, HttpOptions options = {});
  ~HttpApi();
  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  // Binds to host:port (0 picks a free port). Returns the bound port or -1.
  int Bind(const std::string& host, int port);
  // Serves until Stop(); requires a successful Bind.
  bool Listen();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace lfdteach

#endif  // LFDTEACH_HTTP_API_H_
