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

#include "cli.h"

#include <pthread.h>
#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lfdteach/dynamics.h"
#include "lfdteach/event_log.h"
#include "lfdteach/experiments.h"
#include "lfdteach/http_api.h"
#include "lfdteach/learner.h"
#include "lfdteach/machine_teaching.h"
#include "lfdteach/rng.h"
#include "lfdteach/session.h"
#include "lfdteach/skills.h"

namespace lfdteach::cli {
namespace {

// Raised by subcommand bodies for bad flag values that CLI11 cannot check.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes through `fn` to stdout ("-") or to a file.
int WriteOutput(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(out);
    out.flush();
    return kExitOk;
  }
  std::ofstream file(path, std::ios::out | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kExitFailure;
  }
  fn(file);
  file.close();
  if (!file) {
    err << "error: failed writing '" << path << "'\n";
    return kExitFailure;
  }
  return kExitOk;
}

SkillId SkillFromFlag(const std::string& name) {
  const auto id = ParseSkillId(name);
  if (!id) throw UsageError("unknown skill '" + name + "' (use s1 or s2)");
  return *id;
}

void CheckOmegaFlag(double omega) {
  if (!(omega > 0.0) || omega > kPi / 2 + 1e-12) {
    throw UsageError("omega must lie in (0, pi/2]");
  }
}

double ClampOmega(double omega) { return std::min(omega, kPi / 2); }

struct SweepFlags {
  std::string skill = "s1";
  std::vector<double> sigmas{0.05, 0.1, 0.15};
  std::vector<double> omegas;
  std::size_t trials = 1000;
  double lambda = 1e-6;
  std::uint64_t seed = 0;
  double duration = 3.0;
  unsigned threads = 0;
  std::string out = "-";
};

int CmdSweep(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  cfg.skill = SkillFromFlag(f.skill);
  cfg.sigmas = f.sigmas;
  if (!f.omegas.empty()) {
    cfg.omegas.clear();
    for (double w : f.omegas) {
      CheckOmegaFlag(w);
      cfg.omegas.push_back(ClampOmega(w));
    }
  }
  cfg.trials = f.trials;
  cfg.lambda = f.lambda;
  cfg.seed = f.seed;
  cfg.duration = f.duration;
  cfg.threads = f.threads;
  try {
    cfg.Validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const std::vector<SweepRow> rows = RunSweep(cfg);
  return WriteOutput(f.out, out, err,
                     [&](std::ostream& os) { WriteSweepCsv(os, rows); });
}

struct RiskFlags {
  double sigma = 0.1;
  double lambda = 1e-6;
  std::size_t points = 18;
  std::vector<double> omegas;
  std::string out = "-";
};

int CmdRisk(const RiskFlags& f, std::ostream& out, std::ostream& err) {
  if (!(f.sigma >= 0.0)) throw UsageError("sigma must be >= 0");
  if (!(f.lambda >= 0.0)) throw UsageError("lambda must be >= 0");
  std::vector<double> grid;
  if (!f.omegas.empty()) {
    for (double w : f.omegas) {
      CheckOmegaFlag(w);
      grid.push_back(ClampOmega(w));
    }
  } else {
    for (std::size_t k = 1; k <= f.points; ++k) {
      grid.push_back(static_cast<double>(k) * (kPi / 2) /
                     static_cast<double>(f.points));
    }
  }
  std::sort(grid.begin(), grid.end());
  return WriteOutput(f.out, out, err, [&](std::ostream& os) {
    os << "omega,risk,derivative\n";
    char line[128];
    for (double w : grid) {
      std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g\n", w,
                    RiskVariance(w, f.sigma, f.lambda),
                    RiskDerivative(w, f.sigma, f.lambda));
      os << line;
    }
  });
}

int CmdScore(const std::vector<std::string>& values, std::ostream& out) {
  if (values.size() != 4) {
    throw UsageError("score expects four numbers: q1 v1 q2 v2");
  }
  std::array<double, 4> v{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::size_t used = 0;
    try {
      v[i] = std::stod(values[i], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != values[i].size() || !std::isfinite(v[i])) {
      throw UsageError("not a number: '" + values[i] + "'");
    }
  }
  const double score = TeachingScore(
      std::array<State, 2>{State{v[0], v[1]}, State{v[2], v[3]}});
  char line[32];
  std::snprintf(line, sizeof(line), "%.1f\n", score);
  out << line;
  return kExitOk;
}

struct RolloutFlags {
  std::string skill = "s1";
  bool optimal = false;
  bool reference = false;
  double omega = kPi / 2;
  double sigma = 0.1;
  double lambda = 1e-6;
  std::uint64_t seed = 0;
  double duration = 3.0;
  std::size_t stride = 10;
  std::string out = "-";
};

int CmdRollout(const RolloutFlags& f, std::ostream& out, std::ostream& err) {
  SkillSpec skill = GetSkill(SkillFromFlag(f.skill));
  if (!(f.sigma >= 0.0)) throw UsageError("sigma must be >= 0");
  if (!(f.duration > 0.0)) throw UsageError("duration must be positive");
  const double omega = f.optimal ? kPi / 2 : f.omega;
  CheckOmegaFlag(omega);

  PendulumParams p;
  SkillParams w = skill.w_star;
  if (!f.reference) {
    Rng rng = Rng(f.seed).Split(0);
    const DemoSet demos =
        GenerateDemoPair(ClampOmega(omega), skill.w_star, {f.sigma}, rng);
    w = RidgeFit(BuildFeatureMatrix(demos.states), demos.actions, f.lambda);
  }
  const Trajectory traj = Rollout(w, skill.x0, f.duration, p);
  return WriteOutput(f.out, out, err, [&](std::ostream& os) {
    WriteTrajectoryCsv(os, traj, f.stride);
  });
}

struct DemoFlags {
  std::string skill = "s1";
  double omega = kPi / 2;
  double sigma = 0.1;
  double lambda = 1e-6;
  std::uint64_t seed = 0;
  std::string out = "-";
};

int CmdDemoGen(const DemoFlags& f, std::ostream& out, std::ostream& err) {
  const SkillSpec skill = GetSkill(SkillFromFlag(f.skill));
  CheckOmegaFlag(f.omega);
  if (!(f.sigma >= 0.0)) throw UsageError("sigma must be >= 0");
  Rng rng = Rng(f.seed).Split(0);
  const DemoSet demos =
      GenerateDemoPair(ClampOmega(f.omega), skill.w_star, {f.sigma}, rng);
  const FeatureMatrix phi = BuildFeatureMatrix(demos.states);
  const SkillParams w = RidgeFit(phi, demos.actions, f.lambda);
  nlohmann::json doc{
      {"skill", SkillName(skill.id)},
      {"omega", f.omega},
      {"sigma", f.sigma},
      {"states", {ToJson(demos.states[0]), ToJson(demos.states[1])}},
      {"actions", {demos.actions[0], demos.actions[1]}},
      {"det_phi", Determinant(phi)},
      {"score", TeachingScore(demos)},
      {"learnt", {{"stiffness", w.stiffness}, {"damping", w.damping}}}};
  return WriteOutput(f.out, out, err,
                     [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
}

struct ServeFlags {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log;
  std::uint64_t seed = 0;
  double sigma = 0.1;
  bool experimenter = false;
};

int CmdServe(const ServeFlags& f, std::ostream& out, std::ostream& err) {
  if (f.port < 0 || f.port > 65535) throw UsageError("port out of range");
  ServiceConfig cfg;
  cfg.seed = f.seed;
  cfg.action_sigma = f.sigma;

  std::vector<Session> restored;
  if (!f.log.empty()) {
    std::ifstream existing(f.log);
    if (existing) restored = ReplayLog(existing);
  }
  std::unique_ptr<JsonlFileSink> sink;
  if (!f.log.empty()) sink = std::make_unique<JsonlFileSink>(f.log);
  SessionService service(cfg, sink.get());
  service.Restore(restored);

  HttpApi api(service, {f.experimenter});

  // Handle SIGINT/SIGTERM on a dedicated thread; the mask is inherited by
  // the server's worker threads.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);

  const int port = api.Bind(f.host, f.port);
  if (port < 0) {
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    err << "error: cannot bind " << f.host << ":" << f.port << "\n";
    return kExitFailure;
  }
  out << "listening on " << f.host << ":" << port << std::endl;

  std::atomic<bool> stopping{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    stopping = true;
    api.Stop();
  });
  const bool ok = api.Listen();
  if (!stopping) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  if (!ok && !stopping) {
    err << "error: server stopped unexpectedly\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct AnalyzeFlags {
  std::string log;
  std::string out = "-";
};

int CmdAnalyze(const AnalyzeFlags& f, std::ostream& out, std::ostream& err) {
  std::ifstream in(f.log);
  if (!in) {
    err << "error: cannot read log '" << f.log << "'\n";
    return kExitFailure;
  }
  const std::vector<Session> sessions = ReplayLog(in);
  if (sessions.empty()) {
    err << "error: log '" << f.log << "' contains no sessions\n";
    return kExitFailure;
  }
  std::vector<StudyRecord> records;
  for (const Session& s : sessions) records.push_back(ToStudyRecord(s));
  const StudyReport report = AnalyzeStudy(records);
  return WriteOutput(f.out, out, err, [&](std::ostream& os) {
    os << ToJson(report).dump(2) << "\n";
  });
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Machine-teaching toolkit for pendulum skill demonstrations"};
  app.require_subcommand(1);

  SweepFlags sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Demonstration-quality sweep (CSV)");
  sweep_cmd->add_option("--skill", sweep.skill, "s1 or s2");
  sweep_cmd->add_option("--sigmas", sweep.sigmas, "Noise standard deviations")
      ->delimiter(',');
  sweep_cmd->add_option("--omegas", sweep.omegas,
                        "Feature angles in (0, pi/2]; default k*pi/36")
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per cell")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--lambda", sweep.lambda, "Ridge regulariser");
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  sweep_cmd->add_option("--duration", sweep.duration, "Rollout seconds");
  sweep_cmd->add_option("--threads", sweep.threads, "0 = all cores");
  sweep_cmd->add_option("--out", sweep.out, "Output path, - for stdout");

  RiskFlags risk;
  auto* risk_cmd = app.add_subcommand("risk", "Analytic teaching risk table");
  risk_cmd->add_option("--sigma", risk.sigma, "Noise standard deviation");
  risk_cmd->add_option("--lambda", risk.lambda, "Ridge regulariser");
  risk_cmd->add_option("--points", risk.points, "Grid size over (0, pi/2]")
      ->check(CLI::PositiveNumber);
  risk_cmd->add_option("--omegas", risk.omegas, "Explicit omega values")
      ->delimiter(',');
  risk_cmd->add_option("--out", risk.out, "Output path, - for stdout");

  std::vector<std::string> score_values;
  auto* score_cmd =
      app.add_subcommand("score", "Teaching quality score of two states");
  score_cmd->add_option("values", score_values, "q1 v1 q2 v2")
      ->expected(0, 4);
  score_cmd->allow_extras(false);

  RolloutFlags rollout;
  auto* rollout_cmd =
      app.add_subcommand("rollout", "Teach once and roll out the learner");
  rollout_cmd->add_option("--skill", rollout.skill, "s1 or s2");
  rollout_cmd->add_flag("--optimal", rollout.optimal,
                        "Teach with omega = pi/2");
  rollout_cmd->add_flag("--reference", rollout.reference,
                        "Roll out the target controller instead");
  rollout_cmd->add_option("--omega", rollout.omega, "Feature angle");
  rollout_cmd->add_option("--sigma", rollout.sigma, "Action noise std");
  rollout_cmd->add_option("--lambda", rollout.lambda, "Ridge regulariser");
  rollout_cmd->add_option("--seed", rollout.seed, "Seed");
  rollout_cmd->add_option("--duration", rollout.duration, "Seconds");
  rollout_cmd->add_option("--stride", rollout.stride, "Log every Nth step")
      ->check(CLI::PositiveNumber);
  rollout_cmd->add_option("--out", rollout.out, "Output path, - for stdout");

  DemoFlags demo;
  auto* demo_cmd = app.add_subcommand(
      "demo-gen", "Generate one canonical demonstration pair");
  demo_cmd->add_option("--skill", demo.skill, "s1 or s2");
  demo_cmd->add_option("--omega", demo.omega, "Feature angle");
  demo_cmd->add_option("--sigma", demo.sigma, "Action noise std");
  demo_cmd->add_option("--lambda", demo.lambda, "Ridge regulariser");
  demo_cmd->add_option("--seed", demo.seed, "Seed");
  demo_cmd->add_option("--out", demo.out, "Output path, - for stdout");

  ServeFlags serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the teaching-study API");
  serve_cmd->add_option("--host", serve.host, "Bind address");
  serve_cmd->add_option("--port", serve.port, "Port, 0 for any free port");
  serve_cmd->add_option("--log", serve.log, "JSON-lines event log");
  serve_cmd->add_option("--seed", serve.seed, "Service seed");
  serve_cmd->add_option("--sigma", serve.sigma, "Committed action noise std");
  serve_cmd->add_flag("--experimenter", serve.experimenter,
                      "Enable the report endpoint");

  AnalyzeFlags analyze;
  auto* analyze_cmd =
      app.add_subcommand("analyze", "Statistical analysis of a study log");
  analyze_cmd->add_option("--log", analyze.log, "JSON-lines event log")
      ->required();
  analyze_cmd->add_option("--out", analyze.out, "Output path, - for stdout");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*sweep_cmd) return CmdSweep(sweep, out, err);
    if (*risk_cmd) return CmdRisk(risk, out, err);
    if (*score_cmd) return CmdScore(score_values, out);
    if (*rollout_cmd) return CmdRollout(rollout, out, err);
    if (*demo_cmd) return CmdDemoGen(demo, out, err);
    if (*serve_cmd) return CmdServe(serve, out, err);
    if (*analyze_cmd) return CmdAnalyze(analyze, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace lfdteach::cli
