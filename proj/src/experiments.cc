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

#include "lfdteach/experiments.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "lfdteach/evaluation.h"
#include "lfdteach/learner.h"
#include "lfdteach/machine_teaching.h"
#include "lfdteach/rng.h"

namespace lfdteach {
namespace {

struct Cell {
  double sigma;
  double omega;
};

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd Summarize(const std::vector<double>& v) {
  MeanSd s;
  if (v.empty()) return s;
  const double n = static_cast<double>(v.size());
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  if (!std::isfinite(s.mean)) {
    s.sd = s.mean;
    return s;
  }
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / (n - 1.0));
  }
  return s;
}

SweepRow RunCell(const SweepConfig& cfg, const SkillSpec& skill,
                 const Trajectory& reference, const Cell& cell) {
  const NoiseModel noise{cell.sigma};
  const Rng sigma_stream =
      Rng(cfg.seed).Split(std::bit_cast<std::uint64_t>(cell.sigma));

  std::vector<double> rmse(cfg.trials);
  std::vector<double> l2(cfg.trials);
  std::size_t diverged = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    Rng stream = sigma_stream.Split(t);
    const DemoSet demos =
        GenerateDemoPair(cell.omega, skill.w_star, noise, stream);
    const SkillParams w =
        RidgeFit(BuildFeatureMatrix(demos.states), demos.actions, cfg.lambda);
    const EvalResult eval =
        EvaluateAgainst(w, skill.w_star, reference, cfg.pendulum);
    rmse[t] = eval.rmse;
    l2[t] = eval.l2;
    if (eval.diverged) ++diverged;
  }

  SweepRow row;
  row.skill = cfg.skill;
  row.omega = cell.omega;
  row.sigma = cell.sigma;
  row.trials = cfg.trials;
  const MeanSd r = Summarize(rmse);
  const MeanSd l = Summarize(l2);
  row.rmse_mean = r.mean;
  row.rmse_sd = r.sd;
  row.l2_mean = l.mean;
  row.l2_sd = l.sd;
  row.diverged = diverged;
  return row;
}

}  // namespace

double CapForLogging(double value) {
  if (std::isnan(value)) return kLoggedValueCap;
  return std::clamp(value, -kLoggedValueCap, kLoggedValueCap);
}

std::vector<double> DefaultOmegaGrid() {
  std::vector<double> grid;
  for (int k = 1; k <= 18; ++k) grid.push_back(k * kPi / 36.0);
  return grid;
}

void SweepConfig::Validate() const {
  if (trials < 1) throw DomainError("sweep needs at least one trial");
  if (omegas.empty()) throw DomainError("sweep omega grid is empty");
  if (sigmas.empty()) throw DomainError("sweep sigma set is empty");
  for (double omega : omegas) {
    if (!(omega > 0.0) || omega > kPi / 2) {
      throw DomainError("sweep omega outside (0, pi/2]");
    }
  }
  for (double sigma : sigmas) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
      throw DomainError("sweep sigma must be finite and >= 0");
    }
  }
  if (!(lambda >= 0.0)) throw DomainError("sweep lambda must be >= 0");
  pendulum.Validate();
}

std::vector<SweepRow> RunSweep(const SweepConfig& cfg) {
  cfg.Validate();
  SkillSpec skill = GetSkill(cfg.skill);
  skill.x0 = cfg.x0;
  skill.duration = cfg.duration;
  const auto reference = ReferenceTrajectory(skill, cfg.pendulum);

  std::vector<Cell> cells;
  for (double sigma : cfg.sigmas) {
    for (double omega : cfg.omegas) cells.push_back({sigma, omega});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.sigma != b.sigma ? a.sigma < b.sigma : a.omega < b.omega;
  });

  std::vector<SweepRow> rows(cells.size());
  unsigned threads = cfg.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      rows[i] = RunCell(cfg, skill, *reference, cells[i]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "skill,omega,sigma,trials,rmse_mean,rmse_sd,l2_mean,l2_sd\n";
  char line[256];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%.9g,%.9g,%zu,%.9g,%.9g,%.9g,%.9g\n",
                  std::string(SkillName(r.skill)).c_str(), r.omega, r.sigma,
                  r.trials, CapForLogging(r.rmse_mean),
                  CapForLogging(r.rmse_sd), CapForLogging(r.l2_mean),
                  CapForLogging(r.l2_sd));
    out << line;
  }
}

std::string_view GroupName(Group g) {
  return g == Group::kTarget ? "target" : "control";
}

std::optional<Group> ParseGroup(std::string_view text) {
  if (text == "target") return Group::kTarget;
  if (text == "control") return Group::kControl;
  return std::nullopt;
}

std::string_view MetricName(StudyMetric m) {
  return m == StudyMetric::kDetPhi ? "det_phi" : "rmse";
}

double MetricValue(const PhaseMetrics& pm, StudyMetric metric) {
  return metric == StudyMetric::kDetPhi ? std::abs(pm.det_phi) : pm.rmse;
}

std::vector<double> PhaseDelta(const std::vector<StudyRecord>& records,
                               int phase_a, int phase_b, StudyMetric metric) {
  auto find = [](const StudyRecord& r, int phase) -> const PhaseMetrics* {
    for (const PhaseMetrics& pm : r.phases) {
      if (pm.phase == phase) return &pm;
    }
    return nullptr;
  };
  std::vector<double> deltas;
  deltas.reserve(records.size());
  for (const StudyRecord& r : records) {
    const PhaseMetrics* a = find(r, phase_a);
    const PhaseMetrics* b = find(r, phase_b);
    if (a == nullptr || b == nullptr) {
      throw DomainError("record '" + r.participant + "' lacks phase P" +
                        std::to_string(a == nullptr ? phase_a : phase_b));
    }
    deltas.push_back(MetricValue(*b, metric) - MetricValue(*a, metric));
  }
  return deltas;
}

StudyReport AnalyzeStudy(const std::vector<StudyRecord>& records) {
  std::vector<StudyRecord> target;
  std::vector<StudyRecord> control;
  for (const StudyRecord& r : records) {
    if (!r.complete()) continue;
    (r.group == Group::kTarget ? target : control).push_back(r);
  }
  if (target.size() < 2 || control.size() < 2) {
    throw InsufficientDataError(
        "study analysis needs at least two complete records per group (have " +
        std::to_string(target.size()) + " target, " +
        std::to_string(control.size()) + " control)");
  }

  StudyReport report;
  report.target_records = target.size();
  report.control_records = control.size();
  for (const auto& [phase_a, phase_b] : kComparedPhases) {
    for (StudyMetric metric : {StudyMetric::kDetPhi, StudyMetric::kRmse}) {
      Comparison c;
      c.phase_a = phase_a;
      c.phase_b = phase_b;
      c.metric = metric;

      const std::vector<double> dt =
          PhaseDelta(target, phase_a, phase_b, metric);
      const std::vector<double> dc =
          PhaseDelta(control, phase_a, phase_b, metric);
      const std::vector<double> ft = OutlierFilter(dt);
      const std::vector<double> fc = OutlierFilter(dc);
      c.target = {dt.size(), dt.size() - ft.size(), Describe(ft)};
      c.control = {dc.size(), dc.size() - fc.size(), Describe(fc)};
      c.test = TwoSampleTTest(ft, fc);
      report.comparisons.push_back(c);
    }
  }
  return report;
}

nlohmann::json ToJson(const StudyReport& report) {
  using nlohmann::json;
  auto group = [](const GroupSummary& g) {
    return json{{"n", g.stats.n},
                {"raw_n", g.raw_n},
                {"removed", g.removed},
                {"mean", CapForLogging(g.stats.mean)},
                {"sd", CapForLogging(g.stats.sd)}};
  };
  json out;
  out["records"] = {{"target", report.target_records},
                    {"control", report.control_records}};
  out["comparisons"] = json::array();
  for (const Comparison& c : report.comparisons) {
    out["comparisons"].push_back(
        {{"phases", {c.phase_a, c.phase_b}},
         {"metric", MetricName(c.metric)},
         {"groups", {{"target", group(c.target)},
                     {"control", group(c.control)}}},
         {"t_test", {{"t", CapForLogging(c.test.t)},
                     {"df", c.test.df},
                     {"p", c.test.p}}}});
  }
  return out;
}

}  // namespace lfdteach
