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


// Acceptance runner: prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lfdteach/dynamics.h"
#include "lfdteach/evaluation.h"
#include "lfdteach/event_log.h"
#include "lfdteach/experiments.h"
#include "lfdteach/learner.h"
#include "lfdteach/machine_teaching.h"
#include "lfdteach/rng.h"
#include "lfdteach/session.h"
#include "lfdteach/skills.h"
#include "lfdteach/statistics.h"

namespace lfdteach {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAILED]");
  }
};

std::string Fmt(const char* format, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Verdict DeterminantLaw() {
  Verdict v;
  const auto start = Clock::now();
  double worst = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    const double w = i * (kPi / 2) / 1000;
    worst = std::max(worst, std::abs(std::abs(Determinant(CanonicalPhi(w))) -
                                     std::abs(std::sin(w))));
  }
  const double secs = Seconds(start);
  v.Check(worst < 1e-12, Fmt("max deviation %.3g", worst));
  v.Check(secs < 1.0, Fmt("%.3f s", secs));
  return v;
}

Verdict Eigenvalues() {
  Verdict v;
  double eig = 0.0, identity = 0.0;
  for (int i = 1; i <= 181; ++i) {
    const double w = i * (kPi / 2) / 181;
    const FeatureMatrix phi = CanonicalPhi(w);
    Eigen::Matrix2d m;
    m << phi(0, 0), phi(0, 1), phi(1, 0), phi(1, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(m.transpose() * m);
    const Eigen::Vector2d ev = solver.eigenvalues();  // ascending
    const GramEigenvalues b = CanonicalGramEigenvalues(w);
    eig = std::max({eig, std::abs(b.b1 - ev(1)), std::abs(b.b2 - ev(0))});
    const double s = std::sin(w);
    identity = std::max({identity, std::abs(b.b1 + b.b2 - 2.0),
                         std::abs(b.b1 * b.b2 - s * s)});
  }
  v.Check(eig < 1e-10, Fmt("eigen-solve deviation %.3g", eig));
  v.Check(identity < 1e-12, Fmt("sum/product deviation %.3g", identity));
  return v;
}

Verdict RiskStationarity() {
  Verdict v;
  const auto start = Clock::now();
  const double lambda = 1e-6;
  double at_optimum = 0.0, worst_rel = 0.0;
  bool argmin_ok = true;
  const std::vector<double> grid = DefaultOmegaGrid();
  for (double sigma : {0.05, 0.1, 0.15}) {
    at_optimum = std::max(at_optimum,
                          std::abs(RiskDerivative(kPi / 2, sigma, lambda)));
    for (int k = 1; k <= 20; ++k) {
      const double w = k * (kPi / 2) / 21;
      const double h = 1e-5;
      const double fd = (RiskVariance(w + h, sigma, lambda) -
                         RiskVariance(w - h, sigma, lambda)) /
                        (2 * h);
      const double d = RiskDerivative(w, sigma, lambda);
      worst_rel = std::max(worst_rel, std::abs(fd - d) / std::abs(d));
    }
    argmin_ok = argmin_ok && OptimalOmega(grid, sigma, lambda) == grid.back();
  }
  const double secs = Seconds(start);
  v.Check(at_optimum < 1e-12, Fmt("|R'(pi/2)| %.3g", at_optimum));
  v.Check(worst_rel < 1e-6, Fmt("finite-difference rel error %.3g", worst_rel));
  v.Check(argmin_ok, "grid argmin pi/2");
  v.Check(secs < 1.0, Fmt("%.3f s", secs));
  return v;
}

Verdict LearnerCorrectness() {
  Verdict v;
  Rng rng(404);
  double residual = 0.0, gradient = 0.0, exact_gap = 0.0;
  int exact_cases = 0;
  for (int i = 0; i < 1000; ++i) {
    std::array<State, 2> x;
    for (State& s : x) {
      s = {kPi * (2 * rng.Uniform() - 1), 2 * rng.Uniform() - 1};
    }
    const ActionVector u{20 * rng.Uniform() - 10, 20 * rng.Uniform() - 10};
    const double lambda = std::pow(10.0, -6 + 6 * rng.Uniform());
    const FeatureMatrix phi = BuildFeatureMatrix(x);
    const SkillParams w = RidgeFit(phi, u, lambda);

    // (Phi Phi^T + lambda I) w - Phi u
    const double w0 = w.stiffness, w1 = w.damping;
    double r[2];
    for (int row = 0; row < 2; ++row) {
      double lhs = lambda * (row == 0 ? w0 : w1);
      double rhs = 0.0;
      for (int c = 0; c < 2; ++c) {
        const double proj = phi(0, c) * w0 + phi(1, c) * w1;
        lhs += phi(row, c) * proj;
        rhs += phi(row, c) * u[c];
      }
      r[row] = lhs - rhs;
    }
    residual = std::max(residual, std::hypot(r[0], r[1]));

    const double h = 1e-6;
    const double g0 =
        (RidgeLoss({w0 + h, w1}, phi, u, lambda) -
         RidgeLoss({w0 - h, w1}, phi, u, lambda)) / (2 * h);
    const double g1 =
        (RidgeLoss({w0, w1 + h}, phi, u, lambda) -
         RidgeLoss({w0, w1 - h}, phi, u, lambda)) / (2 * h);
    gradient = std::max(gradient, std::hypot(g0, g1));

    if (std::abs(Determinant(phi)) > 0.1) {
      ++exact_cases;
      const SkillParams ridge0 = RidgeFit(phi, u, 0.0);
      const SkillParams exact = ExactFit(phi, u);
      exact_gap = std::max({exact_gap,
                            std::abs(ridge0.stiffness - exact.stiffness),
                            std::abs(ridge0.damping - exact.damping)});
    }
  }
  v.Check(residual < 1e-10, Fmt("normal-equation residual %.3g", residual));
  v.Check(gradient < 1e-6, Fmt("loss gradient %.3g", gradient));
  v.Check(exact_cases > 100 && exact_gap < 1e-10,
          Fmt("ridge(0) vs exact %.3g over %.0f cases", exact_gap,
              exact_cases));
  return v;
}

Verdict MonteCarloAgreement() {
  Verdict v;
  const auto start = Clock::now();
  const SkillParams w_star{9.81, 0.0};
  for (double w : {kPi / 6, kPi / 3, kPi / 2}) {
    const MonteCarloEstimate mc =
        MonteCarloRisk(w, w_star, 0.1, 1e-6, 20000, Rng(55));
    const double analytic = RiskFull(CanonicalPhi(w), w_star, 0.1, 1e-6).total;
    const double z = std::abs(mc.mean - analytic) / mc.standard_error;
    v.Check(z <= 3.0, Fmt("omega %.4f: %.2f SE", w, z));
  }
  const double secs = Seconds(start);
  v.Check(secs < 60.0, Fmt("%.2f s", secs));
  return v;
}

Verdict SimulatorGroundTruth() {
  Verdict v;
  const auto start = Clock::now();
  const SkillSpec s1 = GetSkill(SkillId::kS1);
  const Trajectory t = Rollout(s1.w_star, s1.x0, 3.0, PendulumParams{});
  const double secs = Seconds(start);
  v.Check(std::abs(t.torques[0] + 9.81) <= 1e-9,
          Fmt("first torque %.12g", t.torques[0]));
  v.Check(std::abs(t.states[10].velocity + 0.01962) <= 1e-5,
          Fmt("velocity at 1 ms %.8g", t.states[10].velocity));
  v.Check(std::abs(t.states[1000].angle - 1.4717) <= 2e-3,
          Fmt("angle at 0.1 s %.6g", t.states[1000].angle));
  v.Check(secs < 1.0, Fmt("%.3f s", secs));
  return v;
}

double SpearmanOf(const std::vector<SweepRow>& rows, double sigma) {
  std::vector<double> w, r;
  for (const SweepRow& row : rows) {
    if (row.sigma != sigma) continue;
    w.push_back(row.omega);
    r.push_back(row.rmse_mean);
  }
  return SpearmanRho(w, r);
}

const SweepRow& RowAt(const std::vector<SweepRow>& rows, double sigma) {
  for (const SweepRow& row : rows) {
    if (row.sigma == sigma && row.omega == kPi / 2) return row;
  }
  throw std::logic_error("missing sweep row");
}

Verdict SweepReproduction() {
  Verdict v;
  const auto start = Clock::now();
  SweepConfig cfg;
  cfg.skill = SkillId::kS1;
  cfg.sigmas = {0.1, 0.15};
  cfg.trials = 500;
  cfg.lambda = 1e-6;
  cfg.seed = 2026;
  const std::vector<SweepRow> s1 = RunSweep(cfg);
  const SweepRow& a = RowAt(s1, 0.1);
  const SweepRow& b = RowAt(s1, 0.15);
  v.Check(a.rmse_mean >= 0.20 && a.rmse_mean <= 0.27,
          Fmt("sigma 0.1 rmse %.4f", a.rmse_mean));
  v.Check(b.rmse_mean >= 0.33 && b.rmse_mean <= 0.44,
          Fmt("sigma 0.15 rmse %.4f", b.rmse_mean));
  v.Check(a.l2_mean >= 0.10 && a.l2_mean <= 0.14,
          Fmt("sigma 0.1 l2 %.4f", a.l2_mean));
  for (double sigma : cfg.sigmas) {
    const double rho = SpearmanOf(s1, sigma);
    v.Check(rho <= -0.95, Fmt("s1 sigma %.2f rho %.3f", sigma, rho));
  }
  cfg.skill = SkillId::kS2;
  cfg.sigmas = {0.1};
  const double rho2 = SpearmanOf(RunSweep(cfg), 0.1);
  v.Check(rho2 <= -0.95, Fmt("s2 sigma 0.10 rho %.3f", rho2));
  const double secs = Seconds(start);
  v.Check(secs < 600.0, Fmt("%.1f s", secs));
  return v;
}

Verdict ConservationProperties() {
  Verdict v;
  const PendulumParams p;
  const SkillSpec s1 = GetSkill(SkillId::kS1);
  const Trajectory t1 = Rollout(s1.w_star, s1.x0, 3.0, p);
  // energy scale: the potential amplitude (g/L + k)
  const double scale = p.gravity / p.length + s1.w_star.stiffness;
  const double e0 = ClosedLoopEnergy(s1.w_star, t1.states.front(), p);
  double drift = 0.0;
  for (const State& x : t1.states) {
    drift = std::max(drift, std::abs(ClosedLoopEnergy(s1.w_star, x, p) - e0));
  }
  v.Check(drift / scale < 1e-3, Fmt("s1 relative energy drift %.3g",
                                    drift / scale));

  const SkillSpec s2 = GetSkill(SkillId::kS2);
  const Trajectory t2 = Rollout(s2.w_star, s2.x0, 3.0, p);
  double lowest = t2.states.front().angle;
  for (const State& x : t2.states) lowest = std::min(lowest, x.angle);
  v.Check(lowest >= -0.01, Fmt("s2 lowest angle %.3g", lowest));
  const double final_angle = t2.states.back().angle;
  v.Check(std::abs(final_angle) < 0.05, Fmt("s2 angle at 3 s %.3g",
                                            final_angle));
  return v;
}

Verdict NoiselessOptimalTeaching() {
  Verdict v;
  const PendulumParams p;
  for (SkillId id : {SkillId::kS1, SkillId::kS2}) {
    const SkillSpec s = GetSkill(id);
    Rng rng(1);
    const DemoSet demos = GenerateDemoPair(kPi / 2, s.w_star, {0.0}, rng);
    const SkillParams w =
        RidgeFit(BuildFeatureMatrix(demos.states), demos.actions, 1e-6);
    const EvalResult e = EvaluateLearner(w, s.w_star, s.x0, s.duration, p);
    const std::string name(SkillName(id));
    v.Check(e.l2 < 1e-4, name + Fmt(" |w - w*| %.3g", e.l2));
    v.Check(e.rmse < 1e-3, name + Fmt(" rmse %.3g", e.rmse));
  }
  return v;
}

StudyRecord SyntheticRecord(const std::string& id, Group group, Rng& rng,
                            double effect) {
  StudyRecord r;
  r.participant = id;
  r.group = group;
  const double base_det = 0.2 + 0.3 * rng.Uniform();
  const double base_rmse = 0.5 + rng.Uniform();
  for (int phase = 1; phase <= kPhaseCount; ++phase) {
    PhaseMetrics pm;
    pm.phase = phase;
    pm.det_phi = base_det;
    pm.rmse = base_rmse;
    if (phase >= 3) {
      pm.det_phi += rng.Normal(effect, 0.1);
      pm.rmse += rng.Normal(-effect, 0.1);
    }
    pm.score = 100 * std::abs(pm.det_phi);
    r.phases.push_back(pm);
  }
  return r;
}

std::vector<StudyRecord> SyntheticCohort(std::uint64_t seed, double effect) {
  Rng rng(seed);
  std::vector<StudyRecord> records;
  for (int i = 0; i < 16; ++i) {
    records.push_back(SyntheticRecord("t" + std::to_string(i), Group::kTarget,
                                      rng, effect));
    records.push_back(SyntheticRecord("c" + std::to_string(i), Group::kControl,
                                      rng, 0.0));
  }
  return records;
}

Verdict StatisticsPipeline() {
  Verdict v;
  const std::vector<double> a{1, 2, 3, 4, 5}, b{3, 4, 5, 6, 7};
  const TTestResult t = TwoSampleTTest(a, b);
  v.Check(t.t == -2.0 && t.df == 8.0 && std::abs(t.p - 0.0805) <= 1e-3,
          Fmt("t %.4f p %.5f", t.t, t.p));

  std::vector<double> ten(10, 0.0);
  ten[3] = 100;
  std::vector<double> many(21, 0.0);
  many[7] = 100;
  const bool outliers = OutlierFilter(ten) == ten &&
                        OutlierFilter(many) == std::vector<double>(20, 0.0);
  v.Check(outliers, "outlier removals");

  double worst_effect_p = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const StudyReport r = AnalyzeStudy(SyntheticCohort(seed, 0.4));
    worst_effect_p = std::max(worst_effect_p, r.comparisons[0].test.p);
  }
  v.Check(worst_effect_p < 1e-3, Fmt("effect runs max p %.3g", worst_effect_p));

  int calm = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const StudyReport r = AnalyzeStudy(SyntheticCohort(1000 + seed, 0.0));
    if (r.comparisons[0].test.p > 0.01) ++calm;
  }
  v.Check(calm >= 95, Fmt("null runs with p > 0.01: %.0f/100", calm));
  return v;
}

Verdict ProtocolMachine() {
  Verdict v;
  MemorySink sink;
  ServiceConfig cfg;
  cfg.seed = 11;
  SessionService service(cfg, &sink);
  const ViaPointPair points{State{kPi / 2, 0.0}, State{0.3, 0.6}};

  int guidance_ok = 0;
  for (Group g : {Group::kTarget, Group::kControl}) {
    const std::string id = service.Create(g).id;
    for (int phase = 1; phase <= kPhaseCount; ++phase) {
      const PreviewResult r = service.Preview(id, points);
      const bool expect = g == Group::kTarget && phase == 3;
      if (r.valid && r.score.has_value() == expect) ++guidance_ok;
      const CommitResult c = service.Commit(id, points, phase);
      if (phase == kPhaseCount && !c.done) guidance_ok = -100;
    }
    if (service.Get(id).status() != SessionStatus::kComplete) {
      guidance_ok = -100;
    }
  }
  v.Check(guidance_ok == 12, Fmt("guidance cases correct %.0f/12",
                                 guidance_ok));

  const std::string id = service.Create(Group::kTarget).id;
  bool complete = true;
  for (int phase = 1; phase <= kPhaseCount; ++phase) {
    const CommitResult c = service.Commit(id, points);
    complete = complete && c.done == (phase == kPhaseCount);
  }
  bool rejected = false;
  try {
    service.Commit(id, points);
  } catch (const SessionError& e) {
    rejected = e.kind() == SessionError::Kind::kComplete;
  }
  complete = complete &&
             service.Get(id).status() == SessionStatus::kComplete && rejected;
  v.Check(complete, "six commits complete a session");

  service.Commit(service.Create(Group::kControl).id, points);
  std::istringstream log(sink.text());
  v.Check(ReplayLog(log) == service.Snapshot(), "replay reproduces state");
  return v;
}

}  // namespace
}  // namespace lfdteach

// With an argument N, runs criterion N only.
int main(int argc, char** argv) {
  using lfdteach::Verdict;
  const std::vector<std::function<Verdict()>> criteria{
      lfdteach::DeterminantLaw,        lfdteach::Eigenvalues,
      lfdteach::RiskStationarity,      lfdteach::LearnerCorrectness,
      lfdteach::MonteCarloAgreement,   lfdteach::SimulatorGroundTruth,
      lfdteach::SweepReproduction,     lfdteach::ConservationProperties,
      lfdteach::NoiselessOptimalTeaching, lfdteach::StatisticsPipeline,
      lfdteach::ProtocolMachine};
  std::size_t first = 0, last = criteria.size();
  if (argc > 1) {
    const long n = std::strtol(argv[1], nullptr, 10);
    if (n < 1 || n > static_cast<long>(criteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(n - 1);
    last = first + 1;
  }
  int failures = 0;
  for (std::size_t i = first; i < last; ++i) {
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.pass) ++failures;
    std::printf("criterion %zu: %s  %s\n", i + 1, v.pass ? "PASS" : "FAIL",
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, last - first);
  return failures == 0 ? 0 : 1;
}
